#include "thetapr/prcore.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace thetapr::prcore {

namespace {

// <x,y> with the convention linear in x, conjugate-linear in y.
Cx inner(const CVector& x, const CVector& y) { return y.dot(x); }

bool all_equal(const std::vector<int>& digits) {
    for (int v : digits)
        if (v != digits.front()) return false;
    return true;
}

// K^m when it stays within `cap`, otherwise nullopt.
std::optional<std::uint64_t> checked_pow(std::uint64_t k, int m, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        if (k != 0 && total > cap / k) return std::nullopt;
        total *= k;
        if (total > cap) return std::nullopt;
    }
    return total;
}

void decode_assignment(std::uint64_t index, int k, std::vector<int>& digits) {
    for (int pos = static_cast<int>(digits.size()) - 1; pos >= 0; --pos) {
        digits[static_cast<std::size_t>(pos)] = static_cast<int>(index % k);
        index /= static_cast<std::uint64_t>(k);
    }
}

// Largest |minor| of the (first half, second half) pair of v, i.e. the
// deviation of (f, h) from linear dependence, scale-free up to |v|^2.
double max_pair_minor(const CVector& v, int d) {
    double best = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double m = std::abs(v(i) * v(d + j) - v(j) * v(d + i));
            if (m > best) best = m;
        }
    return best;
}

constexpr double kMinorTol = 1e-9;

void validate_system(int d, int m, const CMatrix& f) {
    if (d < 1 || m < 1)
        throw InvalidInput("VectorSystem: d and m must be positive");
    if (f.rows() != d || f.cols() != m)
        throw InvalidInput("VectorSystem: matrix shape does not match (d, m)");
    numkernel::require_finite(f, "VectorSystem");
}

} // namespace

VectorSystem::VectorSystem(int d_, int m_, CMatrix f) : d(d_), m(m_), F(std::move(f)) {
    validate_system(d, m, F);
}

// Members initialize in declaration order, so d and m read the matrix
// before it is moved into F.
VectorSystem::VectorSystem(CMatrix f)
    : d(static_cast<int>(f.rows())), m(static_cast<int>(f.cols())), F(std::move(f)) {
    validate_system(d, m, F);
}

std::vector<int> VectorSystem::zero_columns(double tol) const {
    std::vector<int> out;
    for (int j = 0; j < m; ++j)
        if (F.col(j).norm() <= tol) out.push_back(j);
    return out;
}

bool is_complete(const VectorSystem& g) {
    return numkernel::rank(g.F) == g.d;
}

bool is_complete(const VectorSystem& g, const std::vector<int>& columns) {
    if (columns.empty()) return false;
    CMatrix sub(g.d, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const int j = columns[i];
        if (j < 0 || j >= g.m)
            throw InvalidInput("is_complete: column index out of range");
        sub.col(static_cast<Eigen::Index>(i)) = g.F.col(j);
    }
    return numkernel::rank(sub) == g.d;
}

namespace {

bool columns_span(const VectorSystem& g, const std::vector<int>& columns,
                  Tolerance tol) {
    if (static_cast<int>(columns.size()) < g.d) return false;
    CMatrix sub(g.d, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i)
        sub.col(static_cast<Eigen::Index>(i)) = g.F.col(columns[i]);
    return numkernel::rank(sub, tol) == g.d;
}

} // namespace

bool has_complement_property(const VectorSystem& g, Tolerance tol) {
    if (g.m > 24)
        throw ResourceLimit("has_complement_property: more than 24 vectors");
    const int rest = g.m - 1;
    const std::uint64_t count = std::uint64_t{1} << rest;
    std::vector<int> side_a, side_b;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        side_a.assign(1, 0); // column 0 pinned to one side; bipartitions unordered
        side_b.clear();
        for (int j = 0; j < rest; ++j) {
            if (mask & (std::uint64_t{1} << j))
                side_a.push_back(j + 1);
            else
                side_b.push_back(j + 1);
        }
        if (!columns_span(g, side_a, tol) && !columns_span(g, side_b, tol))
            return false;
    }
    return true;
}

bool is_full_spark(const VectorSystem& g, Tolerance tol) {
    if (g.m < g.d)
        throw InvalidInput("is_full_spark: requires m >= d");
    // C(m, d) guard.
    double binom = 1.0;
    for (int i = 1; i <= g.d; ++i)
        binom *= static_cast<double>(g.m - g.d + i) / static_cast<double>(i);
    if (binom > 1e6)
        throw ResourceLimit("is_full_spark: too many d-subsets");

    std::vector<int> idx(static_cast<std::size_t>(g.d));
    for (int i = 0; i < g.d; ++i) idx[static_cast<std::size_t>(i)] = i;
    CMatrix sub(g.d, g.d);
    while (true) {
        for (int i = 0; i < g.d; ++i)
            sub.col(i) = g.F.col(idx[static_cast<std::size_t>(i)]);
        if (numkernel::rank(sub, tol) != g.d) return false;
        // next combination
        int pos = g.d - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == g.m - g.d + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < g.d; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return true;
}

CMatrix build_constraint_matrix(const VectorSystem& g, const PhaseSet& t,
                                const Assignment& a) {
    if (static_cast<int>(a.indices.size()) != g.m)
        throw InvalidInput("build_constraint_matrix: assignment length != m");
    CMatrix m(g.m, 2 * g.d);
    for (int j = 0; j < g.m; ++j) {
        const int pi = a.indices[static_cast<std::size_t>(j)];
        if (pi < 0 || pi >= t.size())
            throw InvalidInput("build_constraint_matrix: phase index out of range");
        m.row(j).head(g.d) = g.F.col(j).transpose();
        m.row(j).tail(g.d) = -std::conj(t[pi]) * g.F.col(j).transpose();
    }
    return m;
}

std::optional<CVector> subspace_contains_independent_pair(
    const std::vector<CVector>& basis) {
    if (basis.empty()) return std::nullopt;
    const int dim2 = static_cast<int>(basis.front().size());
    if (dim2 % 2 != 0)
        throw InvalidInput("subspace_contains_independent_pair: odd ambient dimension");
    const int d = dim2 / 2;
    const int k = static_cast<int>(basis.size());
    // Quadratic minors vanish on the span iff they vanish on every basis
    // vector and every pairwise sum (polarization).
    for (int i = 0; i < k; ++i) {
        const CVector& v = basis[static_cast<std::size_t>(i)];
        if (max_pair_minor(v, d) > kMinorTol * v.squaredNorm())
            return v;
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            CVector v = basis[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(j)];
            if (max_pair_minor(v, d) > kMinorTol * v.squaredNorm())
                return v;
        }
    return std::nullopt;
}

namespace {

// Per-thread workspace for the assignment scan.
struct ScanWorker {
    const VectorSystem& g;
    const PhaseSet& t;
    Tolerance tol;
    bool skip_constant;
    CMatrix m;               // m x 2d, left half fixed
    std::vector<int> digits; // current assignment
    Eigen::ColPivHouseholderQR<CMatrix> qr;
    Eigen::JacobiSVD<CMatrix> svd;

    ScanWorker(const VectorSystem& g_, const PhaseSet& t_, Tolerance tol_, bool skip)
        : g(g_), t(t_), tol(tol_), skip_constant(skip),
          m(g_.m, 2 * g_.d), digits(static_cast<std::size_t>(g_.m), 0) {
        for (int j = 0; j < g.m; ++j)
            m.row(j).head(g.d) = g.F.col(j).transpose();
        // Conservative prefilter cutoff: anything within two orders of
        // magnitude of the rank tolerance goes to the SVD for the verdict.
        qr.setThreshold(100.0 * tol.rank_rel * 2.0 * static_cast<double>(g.d));
    }

    // Null space of M(conj theta, F) for the current digits, then the
    // independent-pair test on it.
    std::optional<CVector> test_current() {
        if (skip_constant && all_equal(digits)) return std::nullopt;
        for (int j = 0; j < g.m; ++j)
            m.row(j).tail(g.d) =
                -std::conj(t[digits[static_cast<std::size_t>(j)]]) * g.F.col(j).transpose();
        if (m.rows() >= m.cols()) {
            // Most assignments leave M at full column rank (empty null
            // space); a rank-revealing QR detects that far more cheaply
            // than the SVD.
            qr.compute(m);
            if (qr.rank() == m.cols()) return std::nullopt;
        }
        svd.compute(m, Eigen::ComputeFullV);
        const Eigen::VectorXd& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        const double cutoff =
            tol.rank_rel * smax * static_cast<double>(std::max(m.rows(), m.cols()));
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) ++r;
        const int nullity = static_cast<int>(m.cols()) - r;
        if (nullity == 0) return std::nullopt;
        std::vector<CVector> basis;
        basis.reserve(static_cast<std::size_t>(nullity));
        for (int j = 0; j < nullity; ++j)
            basis.push_back(svd.matrixV().col(r + j));
        return subspace_contains_independent_pair(basis);
    }

    void advance() {
        for (int pos = g.m - 1; pos >= 0; --pos) {
            auto& v = digits[static_cast<std::size_t>(pos)];
            if (++v < t.size()) return;
            v = 0;
        }
    }
};

Witness make_witness(const VectorSystem& g, const PhaseSet& t,
                     const std::vector<int>& digits, const CVector& v) {
    Witness w;
    w.f = v.head(g.d).conjugate();
    w.h = v.tail(g.d).conjugate();
    w.assignment.indices = digits;
    double gmax = 0.0;
    for (int j = 0; j < g.m; ++j) gmax = std::max(gmax, g.F.col(j).norm());
    double resid = 0.0;
    for (int j = 0; j < g.m; ++j) {
        const CVector gj = g.F.col(j);
        resid = std::max(resid, std::abs(inner(w.f, gj) -
                                         t[digits[static_cast<std::size_t>(j)]] * inner(w.h, gj)));
    }
    const double scale = gmax * std::max(w.f.norm(), w.h.norm());
    w.residual = scale > 0.0 ? resid / scale : resid;
    return w;
}

} // namespace

DecisionReport decide_theta_pr(const VectorSystem& g, const PhaseSet& t,
                               const EngineOptions& opts) {
    const auto start_time = std::chrono::steady_clock::now();
    const auto total_opt =
        checked_pow(static_cast<std::uint64_t>(t.size()), g.m, opts.assignment_budget);
    if (!total_opt)
        throw ResourceLimit("decide_theta_pr: |Theta|^m exceeds the assignment budget");
    const std::uint64_t total = *total_opt;

    DecisionReport report;
    for (int j : g.zero_columns())
        report.warnings.push_back("zero column " + std::to_string(j) +
                                  " imposes no constraint");
    const bool skip_constant = numkernel::rank(g.F, opts.tol) == g.d;

    std::uint64_t found = total;
    CVector found_v;
    std::vector<int> found_digits;

    const int nthreads =
        std::max(1, std::min<int>(opts.threads,
                                  static_cast<int>(std::thread::hardware_concurrency())));
    if (nthreads <= 1 || total < 256) {
        ScanWorker w(g, t, opts.tol, skip_constant);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            if (auto v = w.test_current()) {
                found = idx;
                found_v = *v;
                found_digits = w.digits;
                break;
            }
            w.advance();
        }
    } else {
        // Chunked scan; threads race toward the lowest failing index, so the
        // result (and the reported count) is independent of the thread count.
        constexpr std::uint64_t kChunk = 128;
        std::atomic<std::uint64_t> next_chunk{0};
        std::atomic<std::uint64_t> best{total};
        auto run = [&] {
            ScanWorker w(g, t, opts.tol, skip_constant);
            while (true) {
                const std::uint64_t chunk = next_chunk.fetch_add(1);
                const std::uint64_t begin = chunk * kChunk;
                if (begin >= total || begin >= best.load(std::memory_order_relaxed))
                    return;
                const std::uint64_t end = std::min(begin + kChunk, total);
                decode_assignment(begin, t.size(), w.digits);
                for (std::uint64_t idx = begin; idx < end; ++idx) {
                    if (idx >= best.load(std::memory_order_relaxed)) return;
                    if (w.test_current()) {
                        std::uint64_t cur = best.load();
                        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                        }
                        break;
                    }
                    w.advance();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(run);
        for (auto& th : pool) th.join();
        found = best.load();
        if (found < total) {
            // Re-derive the witness deterministically at the winning index.
            ScanWorker w(g, t, opts.tol, skip_constant);
            decode_assignment(found, t.size(), w.digits);
            auto v = w.test_current();
            if (!v)
                throw std::logic_error("decide_theta_pr: winning index lost its witness");
            found_v = *v;
            found_digits = w.digits;
        }
    }

    if (found < total) {
        report.does_pr = false;
        report.witness = make_witness(g, t, found_digits, found_v);
        report.assignments_checked = found + 1;
    } else {
        report.does_pr = true;
        report.assignments_checked = total;
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

bool verify_witness(const VectorSystem& g, const PhaseSet& t, const Witness& w,
                    const EngineOptions& opts) {
    if (static_cast<int>(w.assignment.indices.size()) != g.m) return false;
    if (w.f.size() != g.d || w.h.size() != g.d) return false;
    for (int pi : w.assignment.indices)
        if (pi < 0 || pi >= t.size()) return false;

    const double fh = std::max(w.f.norm(), w.h.norm());
    if (!(fh > 0.0)) return false;
    double gmax = 0.0;
    for (int j = 0; j < g.m; ++j) gmax = std::max(gmax, g.F.col(j).norm());
    const double scale = std::max(gmax * fh, 1e-300);

    double resid = 0.0;
    for (int j = 0; j < g.m; ++j) {
        const CVector gj = g.F.col(j);
        const Cx theta = t[w.assignment.indices[static_cast<std::size_t>(j)]];
        resid = std::max(resid, std::abs(inner(w.f, gj) - theta * inner(w.h, gj)));
    }
    if (resid > opts.witness_tol * scale) return false;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.size(); ++i)
        min_gap = std::min(min_gap, (w.f - t[i] * w.h).norm());
    return min_gap / fh > 10.0 * opts.witness_tol;
}

bool fails_2pr_oracle(const VectorSystem& g, Tolerance tol) {
    return !has_complement_property(g, tol);
}

std::optional<Cover3> fails_3pr_cover(const VectorSystem& g, const PhaseSet& t,
                                      const EngineOptions& opts) {
    if (t.size() != 3)
        throw InvalidInput("fails_3pr_cover: phase set must have 3 elements");
    const auto total_opt = checked_pow(3, g.m, opts.assignment_budget);
    if (!total_opt)
        throw ResourceLimit("fails_3pr_cover: 3^m exceeds the assignment budget");

    ScanWorker w(g, t, opts.tol, /*skip_constant=*/false);
    for (std::uint64_t idx = 0; idx < *total_opt; ++idx) {
        if (auto v = w.test_current()) {
            const CVector f = v->head(g.d).conjugate();
            const CVector h = v->tail(g.d).conjugate();
            Cover3 cover;
            cover.labels.reserve(static_cast<std::size_t>(g.m));
            for (int lab : w.digits) cover.labels.push_back(lab + 1);
            cover.x1 = f - t[0] * h;
            cover.x2 = f - t[1] * h;
            cover.x3 = f - t[2] * h;
            return cover;
        }
        w.advance();
    }
    return std::nullopt;
}

namespace {

bool close(const Cx& x, const Cx& y, double tol) { return std::abs(x - y) <= tol; }

} // namespace

bool c2_oracle(const Cx& a, const Cx& b, const Cx& c, const PhaseSet& t) {
    const int n = t.size();
    if (n < 2 || n > 4)
        throw InvalidInput("c2_oracle: phase set must have 2, 3 or 4 elements");
    const double scale =
        std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    const double eq_tol = 1e-10 * scale;
    const bool ab = close(a, b, eq_tol);
    const bool bc = close(b, c, eq_tol);
    const bool ac = close(a, c, eq_tol);
    if (n == 2) return !(ab && bc && ac);
    if (ab || bc || ac) return false;
    if (n == 3) return true;
    const Cx ratio = (c - a) / (b - a);
    for (const Cx& cr : phases::cr_orderings(t))
        if (close(ratio, std::conj(cr), 1e-9)) return false;
    return true;
}

bool c2_pr_oracle(const Cx& a, const Cx& b, const Cx& c) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    if (close(a, b, 1e-10 * scale)) return false;
    return std::abs(std::imag((c - a) / (b - a))) >= 1e-10;
}

VectorSystem c2_system(const Cx& a, const Cx& b, const Cx& c) {
    CMatrix f(2, 4);
    f << Cx(1, 0), a, b, c,
         Cx(0, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0);
    return VectorSystem(std::move(f));
}

std::vector<std::pair<int, int>> matching_partition(const std::vector<Cx>& theta,
                                                    int d) {
    if (d < 1 || static_cast<int>(theta.size()) != 2 * d)
        throw InvalidInput("matching_partition: need exactly 2d phase values");
    // Group indices by value (first-occurrence order).
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < 2 * d; ++i) {
        bool placed = false;
        for (auto& cls : classes)
            if (close(theta[static_cast<std::size_t>(cls.front())],
                      theta[static_cast<std::size_t>(i)], 1e-10)) {
                cls.push_back(i);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({i});
    }
    std::stable_sort(classes.begin(), classes.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });
    if (static_cast<int>(classes.front().size()) > d)
        throw InfeasibleInput("matching_partition: a value repeats more than d times");

    std::vector<int> pi;
    pi.reserve(theta.size());
    for (const auto& cls : classes) pi.insert(pi.end(), cls.begin(), cls.end());
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r)
        pairs.emplace_back(pi[static_cast<std::size_t>(r)],
                           pi[static_cast<std::size_t>(r + d)]);
    return pairs;
}

VectorSystem construct_invertible_system(const std::vector<Cx>& theta, int d) {
    const auto pairs = matching_partition(theta, d);
    CMatrix f = CMatrix::Zero(d, 2 * d);
    for (int r = 0; r < d; ++r) {
        f(r, pairs[static_cast<std::size_t>(r)].first) = 1.0;
        f(r, pairs[static_cast<std::size_t>(r)].second) = 1.0;
    }
    return VectorSystem(std::move(f));
}

namespace {

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

} // namespace

int block_determinant_sign(const std::vector<std::pair<int, int>>& pairs, int d) {
    // Rows reordered as (j_1, k_1, ..., j_d, k_d), columns interleaved as
    // (0, d, 1, d+1, ...); each permutation contributes its parity.
    std::vector<int> rows;
    rows.reserve(2 * static_cast<std::size_t>(d));
    for (const auto& p : pairs) {
        rows.push_back(p.first);
        rows.push_back(p.second);
    }
    std::vector<int> cols;
    cols.reserve(2 * static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        cols.push_back(r);
        cols.push_back(r + d);
    }
    return permutation_sign(rows) * permutation_sign(cols);
}

int heinosaari_lower_bound(int d) {
    if (d < 2)
        throw InvalidInput("heinosaari_lower_bound: requires d >= 2");
    const unsigned bits = static_cast<unsigned>(d - 1);
    int alpha = 0;
    for (unsigned b = bits; b != 0; b >>= 1) alpha += static_cast<int>(b & 1u);
    int correction = 1;
    if (d % 2 == 1 && alpha % 4 == 2)
        correction = 2;
    else if (d % 2 == 1 && alpha % 4 == 3)
        correction = 3;
    return 4 * d - 4 - 2 * alpha + correction;
}

} // namespace thetapr::prcore
