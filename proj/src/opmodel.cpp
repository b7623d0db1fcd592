#include "balk1/opmodel.hpp"

#include "balk1/balanced.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace balk1::opmodel {

using numkern::opnorm;
using Eigen::Index;

namespace {

void check_same(const TruncOp& x, const TruncOp& y) {
    if (x.modes != y.modes || x.dim != y.dim) throw ShapeError("truncated operators differ in modes or dimension");
}

Index half_size(int modes, Index dim, Half h) { return (h == Half::Plus ? modes + 1 : modes) * dim; }

// Mode of local block index j in one half.
int mode_of(int modes, Half h, Index j) { return h == Half::Plus ? static_cast<int>(j) : static_cast<int>(j) - modes; }

constexpr std::array<Half, 2> kHalves{Half::Plus, Half::Minus};

}  // namespace

TruncOp TruncOp::zero(int modes, Index dim) {
    if (modes < 1 || dim < 1) throw PreconditionError("truncated operator needs modes >= 1 and dim >= 1");
    TruncOp r;
    r.modes = modes;
    r.dim = dim;
    r.plus = CMatrix::Zero(half_size(modes, dim, Half::Plus), half_size(modes, dim, Half::Plus));
    r.minus = CMatrix::Zero(half_size(modes, dim, Half::Minus), half_size(modes, dim, Half::Minus));
    return r;
}

TruncOp TruncOp::identity(int modes, Index dim) {
    TruncOp r = zero(modes, dim);
    r.plus.setIdentity();
    r.minus.setIdentity();
    return r;
}

CMatrix TruncOp::dense() const {
    const Index np = plus.rows(), nm = minus.rows();
    CMatrix m = CMatrix::Zero(np + nm, np + nm);
    m.topLeftCorner(nm, nm) = minus;
    m.bottomRightCorner(np, np) = plus;
    return m;
}

TruncOp TruncOp::from_dense(int modes, Index dim, const CMatrix& m, double cross_tol) {
    TruncOp r = zero(modes, dim);
    const Index np = r.plus.rows(), nm = r.minus.rows();
    if (m.rows() != np + nm || m.cols() != np + nm) throw ShapeError("from_dense: size does not match modes and dim");
    const double cross = std::max(m.topRightCorner(nm, np).cwiseAbs().maxCoeff(),
                                  m.bottomLeftCorner(np, nm).cwiseAbs().maxCoeff());
    if (cross > cross_tol)
        throw PreconditionError("from_dense: operator couples the two halves (entry " + std::to_string(cross) + ")");
    r.minus = m.topLeftCorner(nm, nm);
    r.plus = m.bottomRightCorner(np, np);
    return r;
}

TruncOp TruncOp::adjoint() const {
    TruncOp r = *this;
    r.plus = plus.adjoint();
    r.minus = minus.adjoint();
    return r;
}

double TruncOp::opnorm() const { return std::max(numkern::opnorm(plus), numkern::opnorm(minus)); }

TruncOp operator+(const TruncOp& x, const TruncOp& y) {
    check_same(x, y);
    TruncOp r = x;
    r.plus += y.plus;
    r.minus += y.minus;
    return r;
}

TruncOp operator-(const TruncOp& x, const TruncOp& y) {
    check_same(x, y);
    TruncOp r = x;
    r.plus -= y.plus;
    r.minus -= y.minus;
    return r;
}

TruncOp operator*(const TruncOp& x, const TruncOp& y) {
    check_same(x, y);
    TruncOp r = x;
    r.plus = x.plus * y.plus;
    r.minus = x.minus * y.minus;
    return r;
}

TruncOp operator*(Complex k, const TruncOp& x) {
    TruncOp r = x;
    r.plus *= k;
    r.minus *= k;
    return r;
}

CMatrix FourierSeries::at(int m) const {
    if (2 * std::abs(m) >= grid) return CMatrix::Zero(dim, dim);
    return coeff[static_cast<std::size_t>(m >= 0 ? m : m + grid)];
}

int FourierSeries::bandwidth(double rel_tail) const {
    const int half = (grid - 1) / 2;
    std::vector<double> energy(static_cast<std::size_t>(half) + 1, 0.0);
    double total = 0;
    for (int m = -half; m <= half; ++m) {
        const double e = at(m).squaredNorm();
        energy[static_cast<std::size_t>(std::abs(m))] += e;
        total += e;
    }
    if (total == 0) return 0;
    double tail = total;
    for (int k = 0; k <= half; ++k) {
        tail -= energy[static_cast<std::size_t>(k)];
        if (std::sqrt(std::max(tail, 0.0) / total) <= rel_tail) return k;
    }
    return half;
}

FourierSeries fourier(const MatrixLoop& loop, Exec exec) {
    const int g = loop.grid;
    const Index d = loop.dim;
    if (g < 4 || static_cast<int>(loop.samples.size()) != g) throw PreconditionError("fourier: malformed loop");
    FourierSeries fs;
    fs.grid = g;
    fs.dim = d;
    fs.coeff.assign(static_cast<std::size_t>(g), CMatrix::Zero(d, d));

    // Plan creation is not thread safe; execution with new arrays is.
    static std::mutex plan_mutex;
    fftw_plan plan;
    auto* probe_in = fftw_alloc_complex(static_cast<std::size_t>(g));
    auto* probe_out = fftw_alloc_complex(static_cast<std::size_t>(g));
    {
        std::lock_guard lock(plan_mutex);
        plan = fftw_plan_dft_1d(g, probe_in, probe_out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_free(probe_in);
    fftw_free(probe_out);

    auto entry = [&](Index e) {
        const Index i = e / d, j = e % d;
        auto* in = fftw_alloc_complex(static_cast<std::size_t>(g));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(g));
        for (int k = 0; k < g; ++k) {
            const Complex z = loop.samples[static_cast<std::size_t>(k)](i, j);
            in[k][0] = z.real();
            in[k][1] = z.imag();
        }
        fftw_execute_dft(plan, in, out);
        for (int k = 0; k < g; ++k) fs.coeff[static_cast<std::size_t>(k)](i, j) = Complex(out[k][0], out[k][1]) / double(g);
        fftw_free(in);
        fftw_free(out);
    };
    const Index entries = d * d;
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (Index e = 0; e < entries; ++e) entry(e);
    } else {
        for (Index e = 0; e < entries; ++e) entry(e);
    }
    {
        std::lock_guard lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return fs;
}

CMatrix laurent_block(const FourierSeries& s, int modes, Half half, Exec exec) {
    const Index d = s.dim;
    const Index nb = half == Half::Plus ? modes + 1 : modes;
    CMatrix t(nb * d, nb * d);
    // Coefficients indexed by mode difference, -2N..2N.
    std::vector<CMatrix> c(static_cast<std::size_t>(4 * modes + 1));
    for (int m = -2 * modes; m <= 2 * modes; ++m) c[static_cast<std::size_t>(m + 2 * modes)] = s.at(m);
    auto row = [&](Index r) {
        const int mr = mode_of(modes, half, r);
        for (Index q = 0; q < nb; ++q)
            t.block(r * d, q * d, d, d) = c[static_cast<std::size_t>(mr - mode_of(modes, half, q) + 2 * modes)];
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (Index r = 0; r < nb; ++r) row(r);
    } else {
        for (Index r = 0; r < nb; ++r) row(r);
    }
    return t;
}

namespace {

// Reads the symbol back off the middle column of a Laurent block and compares it with the
// samples. Largest pointwise operator-norm error.
double roundtrip_error(const CMatrix& block, const MatrixLoop& loop, int modes, Half half) {
    const Index d = loop.dim;
    const int kmax = modes / 2 - 1;
    if (kmax < 1) return 0;
    const int center = half == Half::Plus ? modes / 2 : -modes / 2;
    const Index col = (half == Half::Plus ? center : center + modes) * d;
    std::vector<CMatrix> c;
    for (int k = -kmax; k <= kmax; ++k) c.push_back(block.block(col + k * d, col, d, d));
    double err = 0;
    for (int j = 0; j < loop.grid; ++j) {
        const double theta = 2 * std::numbers::pi * j / loop.grid;
        CMatrix v = CMatrix::Zero(d, d);
        for (int k = -kmax; k <= kmax; ++k) v += c[static_cast<std::size_t>(k + kmax)] * std::polar(1.0, k * theta);
        err = std::max(err, opnorm(v - loop.samples[static_cast<std::size_t>(j)]));
    }
    return err;
}

}  // namespace

TruncOp quantize_symbol(const MatrixLoop& plus, const MatrixLoop& minus, int modes, const QuantizeOptions& opts,
                        QuantizeReport* report) {
    if (plus.dim != minus.dim || plus.grid != minus.grid) throw ShapeError("quantize: halves differ in grid or dim");
    if (modes < 4) throw PreconditionError("quantize: need at least 4 modes");
    TruncOp r;
    r.modes = modes;
    r.dim = plus.dim;
    QuantizeReport rep;
    for (Half h : kHalves) {
        const MatrixLoop& loop = h == Half::Plus ? plus : minus;
        const FourierSeries fs = fourier(loop, opts.exec);
        r.half(h) = laurent_block(fs, modes, h, opts.exec);
        if (!opts.check) continue;
        const int k = fs.bandwidth(opts.bandwidth_tail);
        rep.bandwidth = std::max(rep.bandwidth, k);
        if (4 * k > loop.grid)
            throw PreconditionError("quantize: loop undersampled (bandwidth " + std::to_string(k) + ", grid " +
                                    std::to_string(loop.grid) + ")");
        if (modes < 4 * k)
            throw PreconditionError("quantize: " + std::to_string(modes) + " modes too few for bandwidth " +
                                    std::to_string(k));
        rep.roundtrip_error = std::max(rep.roundtrip_error, roundtrip_error(r.half(h), loop, modes, h));
        if (rep.roundtrip_error > opts.roundtrip_tol)
            throw PreconditionError("quantize: symbol round trip off by " + std::to_string(rep.roundtrip_error));
    }
    if (report) *report = rep;
    return r;
}

Quantized quantize(const SymbolPair& sp, int modes, const QuantizeOptions& opts) {
    Quantized q;
    QuantizeReport r1, r2;
    q.D1 = quantize_symbol(sp.plus.sigma1, sp.minus.sigma1, modes, opts, &r1);
    q.D2 = quantize_symbol(sp.plus.sigma2, sp.minus.sigma2, modes, opts, &r2);
    q.report = {std::max(r1.bandwidth, r2.bandwidth), std::max(r1.roundtrip_error, r2.roundtrip_error)};
    return q;
}

TruncOp clip_to_contraction(const TruncOp& x) {
    TruncOp r = x;
    for (Half h : kHalves) {
        if (x.half(h).size() == 0 || numkern::opnorm(x.half(h)) <= 1) continue;
        const auto s = numkern::svd(x.half(h));
        r.half(h) = s.U * s.sigma.cwiseMin(1.0).cast<Complex>().asDiagonal() * s.V.adjoint();
    }
    return r;
}

std::pair<Index, Index> tail_window(int modes, Index dim, Half half, const TailCutoff& cut) {
    if (cut.M < 0) throw PreconditionError("tail cutoff must be non-negative");
    const int g = cut.guard_for(modes);
    const int count = std::max(0, modes - g - cut.M);
    // plus: modes M+1 .. N-g; minus: modes -(N-g) .. -(M+1), stored from -N.
    const Index first = half == Half::Plus ? Index(cut.M + 1) * dim : Index(g) * dim;
    return {first, Index(count) * dim};
}

double tail_seminorm(const TruncOp& x, const TailCutoff& cut) {
    double r = 0;
    for (Half h : kHalves) {
        const auto [first, count] = tail_window(x.modes, x.dim, h, cut);
        if (count == 0)
            throw PreconditionError("tail window empty (M = " + std::to_string(cut.M) +
                                    ", N = " + std::to_string(x.modes) + ")");
        r = std::max(r, opnorm(x.half(h).block(first, first, count, count)));
    }
    return r;
}

namespace {

// |Q L Y R* Q| for isometries L, R given by their ambient coordinates.
double windowed(const CMatrix& l, const CMatrix& y, const CMatrix& r, Index first, Index count) {
    if (y.size() == 0) return 0;
    return opnorm(l.middleRows(first, count) * y * r.middleRows(first, count).adjoint());
}

}  // namespace

double tail_seminorm_on(const std::array<CMatrix, 2>& y, const std::array<CMatrix, 2>& v, int modes, Index dim,
                        const TailCutoff& cut) {
    double r = 0;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const auto [first, count] = tail_window(modes, dim, h, cut);
        if (count == 0) throw PreconditionError("tail window empty (M = " + std::to_string(cut.M) + ")");
        r = std::max(r, windowed(v[i], y[i], v[i], first, count));
    }
    return r;
}

double KBalanceReport::max_at(std::size_t k) const {
    double m = 0;
    for (const auto& nv : table.at(k)) m = std::max(m, nv.value);
    return m;
}

KBalanceReport kbalance_report(const TruncOp& A, const TruncOp& B, const TailCutoff& cut, double tol, bool doubled) {
    check_same(A, B);
    const TruncOp one = TruncOp::identity(A.modes, A.dim);
    const TruncOp As = A.adjoint(), Bs = B.adjoint();
    const TruncOp dA = one - As * A, dB = one - Bs * B, eA = one - A * As, eB = one - B * Bs;
    const TruncOp X = A - B, Xs = As - Bs;
    const std::vector<std::pair<std::string, TruncOp>> res = {
        {"A*A - B*B", As * A - Bs * B},
        {"AA* - BB*", A * As - B * Bs},
        {"A(1-A*A) - B(1-B*B)", A * dA - B * dB},
        {"(1-AA*)A - (1-BB*)B", eA * A - eB * B},
        {"(A-B)(1-A*A)", X * dA},
        {"(1-A*A)(A*-B*)", dA * Xs},
        {"(A-B)(1-B*B)", X * dB},
        {"(1-B*B)(A*-B*)", dB * Xs},
        {"(A*-B*)(1-AA*)", Xs * eA},
        {"(1-AA*)(A-B)", eA * X},
        {"(A*-B*)(1-BB*)", Xs * eB},
        {"(1-BB*)(A-B)", eB * X},
    };
    KBalanceReport r;
    r.tol = tol;
    r.cutoffs.push_back(cut.M);
    TailCutoff twice = cut;
    twice.M = 2 * cut.M;
    if (doubled && cut.M > 0 && tail_window(A.modes, A.dim, Half::Minus, twice).second > 0) r.cutoffs.push_back(twice.M);
    for (int m : r.cutoffs) {
        TailCutoff c = cut;
        c.M = m;
        std::vector<NamedValue> row;
        for (const auto& [name, op] : res) row.push_back({name, tail_seminorm(op, c)});
        r.table.push_back(std::move(row));
    }
    r.kbalanced = r.max_at(r.table.size() - 1) <= tol;
    return r;
}

MatrixLoop split_symbol(const loops::LoopPair& lp, double eta) {
    if (!(eta > 0)) throw PreconditionError("split_symbol: eta must be positive");
    MatrixLoop r = lp.sigma1;
    const double lo = eta * eta;
    auto phi = [lo](double x) { return numkern::smooth_step((x - lo) / (3 * lo)); };
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
        const CMatrix d = lp.sigma1.samples[k] - lp.sigma2.samples[k];
        r.samples[k] = numkern::func_calc_hermitian(d * d.adjoint() + d.adjoint() * d, phi);
    }
    return r;
}

MatrixLoop subbundle_symbol(int grid) {
    return MatrixLoop::sample(
        [](double t) {
            const CMatrix u = balanced::rotation(t, 1);
            CMatrix e = CMatrix::Zero(2, 2);
            e(0, 0) = 1;
            return CMatrix(u.adjoint() * e * u);
        },
        grid);
}

namespace {

double projection_residual(const TruncOp& P) {
    return std::max((P * P - P).opnorm(), (P - P.adjoint()).opnorm());
}

}  // namespace

ModeSplit splitting_projection(const SymbolPair& sp, const TruncOp& A, const TruncOp& B, const SplitOptions& opts,
                               const QuantizeOptions& qopts) {
    check_same(A, B);
    const MatrixLoop sym_plus = opts.symbol_plus ? *opts.symbol_plus : split_symbol(sp.plus, opts.eta);
    const MatrixLoop sym_minus = opts.symbol_minus ? *opts.symbol_minus : split_symbol(sp.minus, opts.eta);
    QuantizeOptions q = qopts;
    q.check = false;
    const TruncOp Pq = quantize_symbol(sym_plus, sym_minus, A.modes, q);

    ModeSplit s;
    s.label = opts.symbol_plus || opts.symbol_minus ? "explicit symbol" : "phi(dd* + d*d)";
    s.symbol_gap = std::numeric_limits<double>::infinity();
    s.P = TruncOp::zero(A.modes, A.dim);
    const double floor = (opts.epsilon / 4) * (opts.epsilon / 4);
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const CMatrix herm = (Pq.half(h) + Pq.half(h).adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
        const auto& ev = es.eigenvalues();
        std::vector<Index> keep;
        for (Index k = 0; k < ev.size(); ++k) {
            s.symbol_gap = std::min(s.symbol_gap, std::abs(ev(k) - 0.5));
            if (ev(k) > 0.5) keep.push_back(k);
        }
        CMatrix v0(herm.rows(), static_cast<Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k) v0.col(static_cast<Index>(k)) = es.eigenvectors().col(keep[k]);

        CMatrix basis = v0;
        if (opts.correction) {
            const CMatrix x = A.half(h) - B.half(h);
            const CMatrix comp = CMatrix::Identity(x.rows(), x.cols()) - v0 * v0.adjoint();
            const CMatrix m = comp * (x * x.adjoint() + x.adjoint() * x) * comp;
            // m >= 0, so a trace below the floor leaves nothing to add.
            std::vector<Index> extra;
            Eigen::SelfAdjointEigenSolver<CMatrix> ec;
            if (m.trace().real() >= floor) {
                ec.compute((m + m.adjoint()) / 2.0);
                for (Index k = 0; k < ec.eigenvalues().size(); ++k)
                    if (ec.eigenvalues()(k) >= floor) extra.push_back(k);
            }
            basis.conservativeResize(Eigen::NoChange, v0.cols() + static_cast<Index>(extra.size()));
            for (std::size_t k = 0; k < extra.size(); ++k)
                basis.col(v0.cols() + static_cast<Index>(k)) = ec.eigenvectors().col(extra[k]);
            s.correction_rank += static_cast<int>(extra.size());
        }
        s.P.half(h) = basis * basis.adjoint();
        s.basis[i] = std::move(basis);
    }
    s.projection_residual = projection_residual(s.P);
    return s;
}

ModeSplit split_from_projection(const TruncOp& P, std::string label) {
    ModeSplit s;
    s.label = std::move(label);
    s.P = P;
    s.projection_residual = projection_residual(P);
    if (s.projection_residual > 1e-8)
        throw PreconditionError("split_from_projection: not a projection (residual " +
                                std::to_string(s.projection_residual) + ")");
    for (Half h : kHalves) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es((P.half(h) + P.half(h).adjoint()) / 2.0);
        std::vector<Index> keep;
        for (Index k = 0; k < es.eigenvalues().size(); ++k)
            if (es.eigenvalues()(k) > 0.5) keep.push_back(k);
        CMatrix v(P.half(h).rows(), static_cast<Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k) v.col(static_cast<Index>(k)) = es.eigenvectors().col(keep[k]);
        s.basis[static_cast<std::size_t>(h)] = std::move(v);
    }
    s.symbol_gap = 0.5;
    return s;
}

double BlockReport::max() const {
    double m = 0;
    for (const auto& b : blocks) m = std::max(m, b.value);
    return m;
}

BlockReport verify_theorem_H(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const TailCutoff& cut,
                             double epsilon) {
    check_same(A, B);
    BlockReport r;
    r.epsilon = epsilon;
    const Index full = A.plus.rows() + A.minus.rows();
    r.degenerate = split.rank() == 0 || split.rank() == full;

    const TruncOp X = A - B;
    const TruncOp one = TruncOp::identity(A.modes, A.dim);
    const std::array<std::pair<std::string, TruncOp>, 4> defects = {{
        {"1-A*A", one - A.adjoint() * A},
        {"1-AA*", one - A * A.adjoint()},
        {"1-B*B", one - B.adjoint() * B},
        {"1-BB*", one - B * B.adjoint()},
    }};

    // Blocks through P = VV*: P y (1-P) = V (V*y - (V*yV) V*) and so on, no complement frame.
    double d12 = 0, d21 = 0, d22 = 0;
    std::array<std::array<double, 3>, 4> dv{};
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const CMatrix& v = split.basis[i];
        const Index n = v.rows(), k = v.cols();
        const CMatrix& x = X.half(h);
        const CMatrix vx = v.adjoint() * x;  // k x n
        const CMatrix xv = x * v;            // n x k
        const CMatrix vxv = vx * v;
        if (k > 0 && k < n) {
            d12 = std::max(d12, opnorm(vx - vxv * v.adjoint()));
            d21 = std::max(d21, opnorm(xv - v * vxv));
        }
        if (k < n) {
            const CMatrix y = x - v * vx;
            d22 = std::max(d22, opnorm(y - (y * v) * v.adjoint()));
        }

        const auto [first, count] = tail_window(A.modes, A.dim, h, cut);
        if (count == 0) throw PreconditionError("tail window empty (M = " + std::to_string(cut.M) + ")");
        if (k == 0) continue;
        const auto vq = v.middleRows(first, count);
        for (std::size_t j = 0; j < defects.size(); ++j) {
            const CMatrix& y = defects[j].second.half(h);
            const CMatrix vy = v.adjoint() * y;
            const CMatrix yv = y * v;
            const CMatrix vyv = vy * v;
            dv[j][0] = std::max(dv[j][0], opnorm(vq * vyv * vq.adjoint()));
            if (k < n) {
                const CMatrix top = vy - vyv * v.adjoint();   // V* y (1-P), k x n
                const CMatrix left = yv - v * vyv;            // (1-P) y V, n x k
                dv[j][1] = std::max(dv[j][1], opnorm(vq * top.middleCols(first, count)));
                dv[j][2] = std::max(dv[j][2], opnorm(left.middleRows(first, count) * vq.adjoint()));
            }
        }
    }
    r.blocks = {{"A-B (1,2)", d12}, {"A-B (2,1)", d21}, {"A-B (2,2)", d22}};
    static constexpr std::array<const char*, 3> kPos = {"(1,1)", "(1,2)", "(2,1)"};
    for (std::size_t k = 0; k < defects.size(); ++k)
        for (std::size_t j = 0; j < 3; ++j) r.blocks.push_back({defects[k].first + " " + kPos[j], dv[k][j]});
    r.pass = r.max() < epsilon;
    return r;
}

BlockReport verify_block_estimates(const TruncOp& A, const TruncOp& B, const ModeSplit& split, const TailCutoff& cut,
                                   double epsilon) {
    check_same(A, B);
    BlockReport r;
    r.epsilon = epsilon;
    r.degenerate = split.rank() == 0;
    std::array<std::array<CMatrix, 2>, 4> y;
    for (Half h : kHalves) {
        const auto i = static_cast<std::size_t>(h);
        const CMatrix& v = split.basis[i];
        const CMatrix a = v.adjoint() * A.half(h) * v;
        const CMatrix b = v.adjoint() * B.half(h) * v;
        const CMatrix one = CMatrix::Identity(v.cols(), v.cols());
        y[0][i] = a.adjoint() * a - b.adjoint() * b;
        y[1][i] = a * a.adjoint() - b * b.adjoint();
        y[2][i] = (b - a) * (one - a.adjoint() * a);
        y[3][i] = (b - a).adjoint() * (one - a * a.adjoint());
    }
    static constexpr std::array<const char*, 4> kNames = {"A11*A11 - B11*B11", "A11A11* - B11B11*",
                                                          "(B11-A11)(1-A11*A11)", "(B11-A11)*(1-A11A11*)"};
    static constexpr std::array<double, 4> kFactor = {2, 2, 4, 4};
    r.pass = true;
    for (std::size_t k = 0; k < 4; ++k) {
        const double val = tail_seminorm_on(y[k], split.basis, A.modes, A.dim, cut);
        r.blocks.push_back({kNames[k], val});
        if (!(val < kFactor[k] * epsilon)) r.pass = false;
    }
    return r;
}

}  // namespace balk1::opmodel
