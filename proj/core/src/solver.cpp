#include "rbrcd/solver.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rbrcd {

void SolverConfig::validate(NodeId n) const {
    const int pe = effective_p();
    if (k < 1 || k > n) throw std::invalid_argument("solver: need 1 <= k <= n");
    if (pe < 1 || pe > k) throw std::invalid_argument("solver: need 1 <= p <= k");
    if (sigma < 0.0) throw std::invalid_argument("solver: sigma must be >= 0");
    if (max_sweeps < 1) throw std::invalid_argument("solver: max_sweeps must be >= 1");
    if (restarts < 1) throw std::invalid_argument("solver: restarts must be >= 1");
    if (threads < 1) throw std::invalid_argument("solver: threads must be >= 1");
    if (rounding_every < 0) throw std::invalid_argument("solver: rounding_every must be >= 0");
}

int subproblem_solve(std::span<const double> b, int p,
                     std::span<std::int32_t> out_cols, std::span<double> out_vals) {
    const int k = static_cast<int>(b.size());
    if (p < 1 || p > k) throw std::invalid_argument("subproblem: need 1 <= p <= k");
    int neg = 0;
    for (int j = 0; j < k; ++j) {
        if (!std::isfinite(b[j])) throw std::invalid_argument("subproblem: non-finite b");
        if (b[j] < 0.0) ++neg;
    }

    if (neg == 0) {
        // b^- = 0: the optimum is the coordinate vector at the smallest b_j.
        int j0 = 0;
        for (int j = 1; j < k; ++j) {
            if (b[j] < b[j0]) j0 = j;
        }
        out_cols[0] = j0;
        out_vals[0] = 1.0;
        return 1;
    }

    // Keep the p largest entries of b^- = max(-b, 0); ties at the cutoff keep
    // the lower column index.
    struct Entry {
        double mag;
        std::int32_t col;
    };
    thread_local std::vector<Entry> cand;
    cand.clear();
    for (int j = 0; j < k; ++j) {
        if (b[j] < 0.0) cand.push_back({-b[j], j});
    }
    const int keep = std::min(neg, p);
    auto by_mag = [](const Entry& a, const Entry& b) {
        return a.mag > b.mag || (a.mag == b.mag && a.col < b.col);
    };
    if (keep < neg) {
        std::nth_element(cand.begin(), cand.begin() + (keep - 1), cand.end(), by_mag);
        cand.resize(keep);
    }
    std::sort(cand.begin(), cand.end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
    double nrm2 = 0.0;
    for (const Entry& e : cand) nrm2 += e.mag * e.mag;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int t = 0; t < keep; ++t) {
        out_cols[t] = cand[t].col;
        out_vals[t] = cand[t].mag * inv;
    }
    return keep;
}

namespace {

// Memory access shims: the async path routes every touch of shared row data
// and of the accumulator through relaxed atomics so concurrent sweeps are
// well-defined (stale/torn values are expected and tolerated); the sequential
// path compiles to plain loads and stores.
template <bool Shared>
struct Mem {
    static double load(const double& x) {
        if constexpr (Shared) {
            return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
        } else {
            return x;
        }
    }
    static std::int32_t load(const std::int32_t& x) {
        if constexpr (Shared) {
            return std::atomic_ref<std::int32_t>(const_cast<std::int32_t&>(x))
                .load(std::memory_order_relaxed);
        } else {
            return x;
        }
    }
    template <typename T>
    static void store(T& x, T v) {
        if constexpr (Shared) {
            std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
        } else {
            x = v;
        }
    }
    // Accumulator add. The shared path is a deliberate unsynchronized
    // read-modify-write (relaxed load + relaxed store): concurrent updates to
    // the same component may be lost, which the drift monitor repairs. A CAS
    // loop here would serialize all workers on one cache line for no accuracy
    // gain. With a single worker this is exactly `x += v`.
    static void add(double& x, double v) {
        if constexpr (Shared) {
            std::atomic_ref<double> r(x);
            r.store(r.load(std::memory_order_relaxed) + v, std::memory_order_relaxed);
        } else {
            x += v;
        }
    }
};

struct RowScratch {
    std::vector<double> b;              // k
    std::vector<std::int32_t> new_cols; // p
    std::vector<double> new_vals;       // p
    std::vector<std::int32_t> old_cols; // p
    std::vector<double> old_vals;       // p

    RowScratch(int k, int p)
        : b(static_cast<std::size_t>(k)),
          new_cols(static_cast<std::size_t>(p)),
          new_vals(static_cast<std::size_t>(p)),
          old_cols(static_cast<std::size_t>(p)),
          old_vals(static_cast<std::size_t>(p)) {}
};

// One proximal row update. Reads possibly-stale neighbor rows and accumulator,
// solves the closed-form subproblem, writes the row (sole owner) and applies
// the d_i * (u_new - u_old) accumulator delta. Returns ||u_new - u_old||^2.
template <bool Shared>
double update_row(const Graph& g, FactorMatrix& U, NodeId i, double sigma, RowScratch& sc) {
    using M = Mem<Shared>;
    const int k = U.rank();
    const int p = U.sparsity();
    const double di = static_cast<double>(g.degree(i));
    const double two_lambda_di = 2.0 * g.lambda() * di;

    std::int32_t* cols = U.cols_data();
    double* vals = U.vals_data();
    std::int32_t* len = U.len_data();
    double* dtu = U.dtu_data();

    // Own row snapshot; this worker is the only writer of row i.
    const std::size_t off_i = U.offset(i);
    const int old_len = std::clamp(M::load(len[i]), 0, p);
    for (int t = 0; t < old_len; ++t) {
        sc.old_cols[t] = M::load(cols[off_i + t]);
        sc.old_vals[t] = M::load(vals[off_i + t]);
    }

    // b = -2 sum_{j in N(i)} u_j + 2 lambda d_i (dtu - d_i u_i) - sigma u_i
    std::fill(sc.b.begin(), sc.b.end(), 0.0);
    for (NodeId j : g.neighbors(i)) {
        const std::size_t off_j = U.offset(j);
        const int lj = std::clamp(M::load(len[j]), 0, p);
        for (int t = 0; t < lj; ++t) {
            const std::int32_t c = M::load(cols[off_j + t]);
            sc.b[c] -= 2.0 * M::load(vals[off_j + t]);
        }
    }
    if (two_lambda_di != 0.0) {
        for (int j = 0; j < k; ++j) sc.b[j] += two_lambda_di * M::load(dtu[j]);
    }
    for (int t = 0; t < old_len; ++t) {
        sc.b[sc.old_cols[t]] -= (two_lambda_di * di + sigma) * sc.old_vals[t];
    }

    const int new_len = subproblem_solve(sc.b, p, sc.new_cols, sc.new_vals);

    for (int t = 0; t < new_len; ++t) {
        M::store(cols[off_i + t], sc.new_cols[t]);
        M::store(vals[off_i + t], sc.new_vals[t]);
    }
    M::store(len[i], new_len);

    // Merge the sorted supports for the squared change and the accumulator delta.
    double delta_sq = 0.0;
    int ta = 0;
    int tb = 0;
    while (ta < old_len || tb < new_len) {
        std::int32_t col;
        double diff;
        if (tb >= new_len || (ta < old_len && sc.old_cols[ta] < sc.new_cols[tb])) {
            col = sc.old_cols[ta];
            diff = -sc.old_vals[ta];
            ++ta;
        } else if (ta >= old_len || sc.new_cols[tb] < sc.old_cols[ta]) {
            col = sc.new_cols[tb];
            diff = sc.new_vals[tb];
            ++tb;
        } else {
            col = sc.old_cols[ta];
            diff = sc.new_vals[tb] - sc.old_vals[ta];
            ++ta;
            ++tb;
        }
        delta_sq += diff * diff;
        if (di != 0.0 && diff != 0.0) M::add(dtu[col], di * diff);
    }
    return delta_sq;
}

double sparse_dot(const FactorMatrix& U, NodeId i, NodeId j) {
    const auto ci = U.row_cols(i);
    const auto vi = U.row_vals(i);
    const auto cj = U.row_cols(j);
    const auto vj = U.row_vals(j);
    double s = 0.0;
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < ci.size() && b < cj.size()) {
        if (ci[a] < cj[b]) ++a;
        else if (cj[b] < ci[a]) ++b;
        else s += vi[a++] * vj[b++];
    }
    return s;
}

} // namespace

void compute_b(const Graph& g, const FactorMatrix& U, NodeId i, double sigma,
               std::span<double> out) {
    const int k = U.rank();
    const double di = static_cast<double>(g.degree(i));
    const double two_lambda_di = 2.0 * g.lambda() * di;
    std::fill(out.begin(), out.end(), 0.0);
    for (NodeId j : g.neighbors(i)) {
        const auto cj = U.row_cols(j);
        const auto vj = U.row_vals(j);
        for (std::size_t t = 0; t < cj.size(); ++t) out[cj[t]] -= 2.0 * vj[t];
    }
    if (two_lambda_di != 0.0) {
        const auto dtu = U.dtu();
        for (int j = 0; j < k; ++j) out[j] += two_lambda_di * dtu[j];
    }
    const auto ci = U.row_cols(i);
    const auto vi = U.row_vals(i);
    for (std::size_t t = 0; t < ci.size(); ++t) {
        out[ci[t]] -= (two_lambda_di * di + sigma) * vi[t];
    }
}

double rbr_sweep_sequential(const Graph& g, FactorMatrix& U, double sigma) {
    RowScratch sc(U.rank(), U.sparsity());
    double delta_sq = 0.0;
    for (NodeId i = 0; i < U.rows(); ++i) delta_sq += update_row<false>(g, U, i, sigma, sc);
    return delta_sq;
}

void round_in_place(FactorMatrix& U, const Graph& g) {
    for (NodeId i = 0; i < U.rows(); ++i) {
        const auto cols = U.row_cols(i);
        const auto vals = U.row_vals(i);
        if (cols.empty()) continue;
        std::int32_t best_col = cols[0];
        double best_val = vals[0];
        for (std::size_t t = 1; t < cols.size(); ++t) {
            if (vals[t] > best_val) { // strict: ties keep the lower column
                best_val = vals[t];
                best_col = cols[t];
            }
        }
        const double one = 1.0;
        U.set_row(i, {&best_col, 1}, {&one, 1});
    }
    U.recompute_dtu(g);
}

double objective_value(const Graph& g, const FactorMatrix& U) {
    double f = 0.0;
    for (NodeId i = 0; i < U.rows(); ++i) {
        for (NodeId j : g.neighbors(i)) {
            if (j > i) f -= 2.0 * sparse_dot(U, i, j);
        }
    }
    std::vector<double> dtu(static_cast<std::size_t>(U.rank()), 0.0);
    for (NodeId i = 0; i < U.rows(); ++i) {
        const double di = static_cast<double>(g.degree(i));
        if (di == 0.0) continue;
        const auto cols = U.row_cols(i);
        const auto vals = U.row_vals(i);
        for (std::size_t t = 0; t < cols.size(); ++t) dtu[cols[t]] += di * vals[t];
    }
    double nrm2 = 0.0;
    for (double x : dtu) nrm2 += x * x;
    return f + g.lambda() * nrm2;
}

namespace {

constexpr double kDriftRel = 1e-6; // refresh threshold, relative to ||d||_1

// Post-sweep bookkeeping shared by both run modes: scheduled rounding, the
// accumulator drift monitor, optional progress reporting.
template <bool Shared>
void finish_sweep(const Graph& g, FactorMatrix& U, const SolverConfig& cfg, int sweep,
                  double delta_sq, const ProgressFn& progress) {
    double drift = 0.0;
    if constexpr (Shared) {
        drift = U.dtu_drift(g);
    }
    const bool round_now = cfg.rounding_every > 0 && sweep % cfg.rounding_every == 0;
    if (round_now) {
        round_in_place(U, g); // includes a from-scratch accumulator rebuild
    } else if (Shared && drift > kDriftRel * g.total_degree()) {
        U.recompute_dtu(g);
    }
    if (progress) {
        SweepInfo info;
        info.sweep = sweep;
        info.delta_sq = delta_sq;
        info.dtu_drift = drift;
        info.objective = objective_value(g, U);
        progress(info);
    }
}

} // namespace

RunStats rbr_run_sequential(const Graph& g, FactorMatrix& U, const SolverConfig& cfg,
                            const ProgressFn& progress) {
    const double tol = cfg.effective_tol(U.rows());
    RunStats stats;
    for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        const double delta_sq = rbr_sweep_sequential(g, U, cfg.sigma);
        stats.sweeps = sweep;
        stats.final_delta_sq = delta_sq;
        finish_sweep<false>(g, U, cfg, sweep, delta_sq, progress);
        if (delta_sq < tol) break;
    }
    return stats;
}

RunStats rbr_run_async(const Graph& g, FactorMatrix& U, const SolverConfig& cfg,
                       const ProgressFn& progress) {
    const NodeId n = U.rows();
    const int workers = std::max(1, cfg.threads);

    // Persistent pool; every sweep is one barrier phase. Workers drain the
    // shared row cursor, then the coordinator (completion step) does the
    // per-sweep bookkeeping while the pool waits.
    std::atomic<NodeId> cursor{0};
    std::vector<double> partial(static_cast<std::size_t>(workers), 0.0);
    std::atomic<bool> done{false};
    RunStats stats;

    auto on_sweep_done = [&]() noexcept {
        double delta_sq = 0.0;
        for (double x : partial) delta_sq += x;
        std::fill(partial.begin(), partial.end(), 0.0);
        ++stats.sweeps;
        stats.final_delta_sq = delta_sq;
        finish_sweep<true>(g, U, cfg, stats.sweeps, delta_sq, progress);
        if (stats.sweeps >= cfg.max_sweeps) done.store(true, std::memory_order_relaxed);
        cursor.store(0, std::memory_order_relaxed);
    };
    std::barrier sync(workers, on_sweep_done);

    // Rows are claimed in small blocks: the cursor stays an atomic claim
    // point but is touched 16x less often. Order is still 0..n-1, so one
    // worker degenerates to the sequential sweep.
    constexpr NodeId kClaim = 16;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            RowScratch sc(U.rank(), U.sparsity());
            while (!done.load(std::memory_order_relaxed)) {
                double local = 0.0;
                for (;;) {
                    const NodeId base = cursor.fetch_add(kClaim, std::memory_order_relaxed);
                    if (base >= n) break;
                    const NodeId stop = std::min<NodeId>(base + kClaim, n);
                    for (NodeId i = base; i < stop; ++i) {
                        local += update_row<true>(g, U, i, cfg.sigma, sc);
                    }
                }
                partial[w] += local;
                sync.arrive_and_wait();
            }
        });
    }
    for (auto& t : pool) t.join();
    return stats;
}

DetectResult detect(const Graph& g, const SolverConfig& cfg, const ProgressFn& progress) {
    const NodeId n = g.num_nodes();
    cfg.validate(n);
    const int p = cfg.effective_p();

    DetectResult out;
    double best_q = -std::numeric_limits<double>::infinity();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> degs;
    if (cfg.recovery == Recovery::WeightedKMeans) {
        degs.resize(static_cast<std::size_t>(n));
        for (NodeId i = 0; i < n; ++i) degs[i] = static_cast<double>(g.degree(i));
    }

    for (int r = 0; r < cfg.restarts; ++r) {
        const auto r0 = std::chrono::steady_clock::now();
        Rng rng(cfg.seed, static_cast<std::uint64_t>(r) + 1);
        FactorMatrix U = FactorMatrix::random_init(n, cfg.k, p, rng,
                                                   cfg.init == InitMode::SingleSupport);
        U.recompute_dtu(g);

        RunStats stats = cfg.threads > 1 ? rbr_run_async(g, U, cfg, progress)
                                         : rbr_run_sequential(g, U, cfg, progress);

        Partition part;
        switch (cfg.recovery) {
            case Recovery::Rounding: part = recover_rounding(U); break;
            case Recovery::KMeans: part = recover_kmeans(U, cfg.k, {}, rng); break;
            case Recovery::WeightedKMeans: part = recover_kmeans(U, cfg.k, degs, rng); break;
        }
        const double q = modularity(g, part);

        RestartStat rs;
        rs.stream = static_cast<std::uint64_t>(r) + 1;
        rs.sweeps = stats.sweeps;
        rs.objective = objective_value(g, U);
        rs.modularity_q = q;
        rs.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - r0).count();
        out.restarts.push_back(rs);

        if (q > best_q) {
            best_q = q;
            out.partition = std::move(part);
            out.best_restart = r;
        }
    }

    out.report = evaluate(g, out.partition);
    out.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace rbrcd
