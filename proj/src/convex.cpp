// SPDX-License-Identifier: Apache-2.0
#include "insarfopt/convex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace insarfopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStrictMargin = 1e-9;  // phase-I strict feasibility margin
constexpr int kMaxNewtonPerStage = 60;
constexpr int kMaxBacktracks = 60;

double poly_value(const std::vector<double>& coef, double u) {
    // Horner from the top power; coef[k] multiplies u^k.
    double v = 0.0;
    for (size_t k = coef.size(); k-- > 0;) v = v * u + coef[k];
    return v * u;  // stored coef start at power 1
}

double poly_d1(const std::vector<double>& coef, double u) {
    double v = 0.0;
    for (size_t k = coef.size(); k-- > 0;) v = v * u + coef[k] * static_cast<double>(k + 1);
    return v;
}

double poly_d2(const std::vector<double>& coef, double u) {
    double v = 0.0;
    for (size_t k = coef.size(); k-- > 1;)
        v = v * u + coef[k] * static_cast<double>((k + 1) * k);
    return v;
}
}  // namespace

double ConvexProgram::Constraint::eval(const Eigen::VectorXd& x) const {
    switch (kind) {
        case Kind::Affine:
        case Kind::Box:
            return (a.dot(x) - b) / scale;
        case Kind::Quadratic:
        case Kind::NormBound:
            return (x.dot(Q * x) + q.dot(x) + r) / scale;
        case Kind::Polynomial: {
            // Clamped at u = 0 so the extended function stays convex even if
            // an iterate momentarily leaves the domain half-space.
            const double u = std::max(s.dot(x) + t, 0.0);
            return (poly_value(coef, u) - bound) / scale;
        }
    }
    return 0.0;
}

Eigen::VectorXd ConvexProgram::Constraint::grad(const Eigen::VectorXd& x) const {
    switch (kind) {
        case Kind::Affine:
        case Kind::Box:
            return a / scale;
        case Kind::Quadratic:
        case Kind::NormBound:
            return (2.0 * (Q * x) + q) / scale;
        case Kind::Polynomial: {
            const double u = s.dot(x) + t;
            if (u <= 0.0) return Eigen::VectorXd::Zero(x.size());
            return (poly_d1(coef, u) / scale) * s;
        }
    }
    return Eigen::VectorXd::Zero(x.size());
}

void ConvexProgram::Constraint::add_hessian(const Eigen::VectorXd& x, double w,
                                            Eigen::MatrixXd& H) const {
    switch (kind) {
        case Kind::Affine:
        case Kind::Box:
            return;
        case Kind::Quadratic:
        case Kind::NormBound:
            H.noalias() += (2.0 * w / scale) * Q;
            return;
        case Kind::Polynomial: {
            const double u = s.dot(x) + t;
            if (u <= 0.0) return;
            H.noalias() += (w * poly_d2(coef, u) / scale) * (s * s.transpose());
            return;
        }
    }
}

ConvexProgram::ConvexProgram(int num_vars) : n_(num_vars), c_(Eigen::VectorXd::Zero(num_vars)) {
    if (num_vars <= 0) throw std::invalid_argument("ConvexProgram: num_vars must be positive");
}

void ConvexProgram::set_objective(const Eigen::VectorXd& c) {
    if (c.size() != n_) throw std::invalid_argument("objective dimension mismatch");
    c_ = c;
}

void ConvexProgram::add_affine(const Eigen::VectorXd& a, double b, std::string label) {
    if (a.size() != n_) throw std::invalid_argument("affine dimension mismatch");
    Constraint c;
    c.kind = Kind::Affine;
    c.a = a;
    c.b = b;
    c.scale = std::max({a.cwiseAbs().maxCoeff(), std::abs(b), 1e-9});
    c.label = std::move(label);
    constraints_.push_back(std::move(c));
}

void ConvexProgram::add_quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q, double r,
                                  std::string label) {
    if (Q.rows() != n_ || Q.cols() != n_ || q.size() != n_)
        throw std::invalid_argument("quadratic dimension mismatch");
    Constraint c;
    c.kind = Kind::Quadratic;
    c.Q = 0.5 * (Q + Q.transpose());
    c.q = q;
    c.r = r;
    c.scale = std::max({c.Q.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff(), std::abs(r), 1e-9});
    c.label = std::move(label);
    constraints_.push_back(std::move(c));
}

void ConvexProgram::add_norm_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& d,
                                   double bound, std::string label) {
    if (A.cols() != n_ || A.rows() != d.size())
        throw std::invalid_argument("norm bound dimension mismatch");
    // ||Ax + d|| <= bound  <=>  x^T A^T A x + 2 d^T A x + d^T d - bound^2 <= 0
    Eigen::MatrixXd Q = A.transpose() * A;
    Eigen::VectorXd q = 2.0 * A.transpose() * d;
    add_quadratic(Q, q, d.dot(d) - bound * bound, std::move(label));
    constraints_.back().kind = Kind::NormBound;
}

void ConvexProgram::add_polynomial(const std::vector<double>& coef, const Eigen::VectorXd& s,
                                   double t, double bound, std::string label) {
    if (s.size() != n_) throw std::invalid_argument("polynomial dimension mismatch");
    if (coef.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
    for (double ck : coef)
        if (ck < 0.0) throw std::invalid_argument("polynomial coefficients must be nonnegative");
    Constraint c;
    c.kind = Kind::Polynomial;
    c.coef = coef;
    c.s = s;
    c.t = t;
    c.bound = bound;
    c.scale = std::max({*std::max_element(coef.begin(), coef.end()), std::abs(bound), 1e-9});
    c.label = label;
    constraints_.push_back(std::move(c));
    // Domain half-space u >= 0.
    add_affine(-s, t, label.empty() ? "poly_domain" : label + "_domain");
}

void ConvexProgram::add_box(int var, double lo, double hi, std::string label) {
    if (var < 0 || var >= n_) throw std::invalid_argument("box variable out of range");
    if (lo > hi) throw std::invalid_argument("box bounds inverted");
    auto one_side = [&](double sign, double b, const char* side) {
        Constraint c;
        c.kind = Kind::Box;
        c.a = Eigen::VectorXd::Zero(n_);
        c.a[var] = sign;
        c.b = b;
        c.scale = std::max(std::abs(b), 1.0);
        c.label = label.empty() ? std::string("box") + side : label + side;
        constraints_.push_back(std::move(c));
    };
    if (std::isfinite(hi)) one_side(1.0, hi, "_hi");   //  x <= hi
    if (std::isfinite(lo)) one_side(-1.0, -lo, "_lo");  // -x <= -lo
}

bool ConvexProgram::convexity_spot_check(int trials, double radius, uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-radius, radius);
    Eigen::VectorXd x(n_), y(n_);
    for (int tr = 0; tr < trials; ++tr) {
        for (int i = 0; i < n_; ++i) {
            x[i] = dist(rng);
            y[i] = dist(rng);
        }
        const Eigen::VectorXd m = 0.5 * (x + y);
        for (const auto& c : constraints_) {
            const double lhs = c.eval(m);
            const double rhs = 0.5 * (c.eval(x) + c.eval(y));
            if (lhs > rhs + 1e-7 * (1.0 + std::abs(rhs))) return false;
        }
    }
    return true;
}

std::string ConvexProgram::debug_dump() const {
    static const char* names[] = {"affine", "quadratic", "norm", "polynomial", "box"};
    std::ostringstream os;
    os << "vars=" << n_ << " constraints=" << constraints_.size() << "\n";
    for (size_t i = 0; i < constraints_.size(); ++i) {
        const auto& c = constraints_[i];
        os << "  [" << i << "] " << names[static_cast<int>(c.kind)] << " scale=" << c.scale
           << " label=" << (c.label.empty() ? "-" : c.label) << "\n";
    }
    return os.str();
}

namespace {

// Barrier working set: the program's constraints, optionally augmented with a
// slack variable s (phase-I relaxation g_i(x) - s <= 0) and a cap s <= s_cap.
struct BarrierProblem {
    const ConvexProgram* prog;
    bool phase1 = false;
    double s_cap = 0.0;

    int dim() const { return prog->num_vars() + (phase1 ? 1 : 0); }
    int count() const { return prog->num_constraints() + (phase1 ? 1 : 0); }

    double eval(int i, const Eigen::VectorXd& x) const {
        const int m = prog->num_constraints();
        if (i < m) {
            double g = prog->constraints()[static_cast<size_t>(i)].eval(
                phase1 ? Eigen::VectorXd(x.head(prog->num_vars())) : x);
            if (phase1) g -= x[prog->num_vars()];
            return g;
        }
        return (x[prog->num_vars()] - s_cap) / std::max(1.0, std::abs(s_cap));
    }

    Eigen::VectorXd grad(int i, const Eigen::VectorXd& x) const {
        const int n = prog->num_vars();
        const int m = prog->num_constraints();
        Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
        if (i < m) {
            if (phase1) {
                g.head(n) = prog->constraints()[static_cast<size_t>(i)].grad(
                    Eigen::VectorXd(x.head(n)));
                g[n] = -1.0;
            } else {
                g = prog->constraints()[static_cast<size_t>(i)].grad(x);
            }
        } else {
            g[n] = 1.0 / std::max(1.0, std::abs(s_cap));
        }
        return g;
    }

    void add_hessian(int i, const Eigen::VectorXd& x, double w, Eigen::MatrixXd& H) const {
        const int n = prog->num_vars();
        if (i >= prog->num_constraints()) return;
        if (phase1) {
            Eigen::MatrixXd Hx = Eigen::MatrixXd::Zero(n, n);
            prog->constraints()[static_cast<size_t>(i)].add_hessian(
                Eigen::VectorXd(x.head(n)), w, Hx);
            H.topLeftCorner(n, n) += Hx;
        } else {
            prog->constraints()[static_cast<size_t>(i)].add_hessian(x, w, H);
        }
    }

    bool strictly_feasible(const Eigen::VectorXd& x, double margin) const {
        for (int i = 0; i < count(); ++i)
            if (eval(i, x) > -margin) return false;
        return true;
    }
};

double barrier_phi(const BarrierProblem& bp, const Eigen::VectorXd& c, double t,
                   const Eigen::VectorXd& x) {
    double phi = -t * c.dot(x);
    for (int i = 0; i < bp.count(); ++i) {
        const double g = bp.eval(i, x);
        if (g >= 0.0) return kInf;
        phi -= std::log(-g);
    }
    return phi;
}

// Newton centering for min_x -t c^T x - sum log(-g_i). Returns true on
// convergence; the early-exit hook (phase-I) can terminate a stage.
template <typename EarlyExit>
bool center(const BarrierProblem& bp, const Eigen::VectorXd& c, double t, Eigen::VectorXd& x,
            int& total_iters, EarlyExit early_exit) {
    const int dim = bp.dim();
    Eigen::MatrixXd H(dim, dim);
    Eigen::VectorXd grad(dim);
    for (int it = 0; it < kMaxNewtonPerStage; ++it) {
        grad = -t * c;
        H = 1e-10 * Eigen::MatrixXd::Identity(dim, dim);
        for (int i = 0; i < bp.count(); ++i) {
            const double g = bp.eval(i, x);
            const Eigen::VectorXd gg = bp.grad(i, x);
            grad.noalias() += (-1.0 / g) * gg;
            H.noalias() += (1.0 / (g * g)) * (gg * gg.transpose());
            bp.add_hessian(i, x, -1.0 / g, H);
        }
        Eigen::VectorXd d;
        double ridge = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(
                ridge == 0.0 ? H : Eigen::MatrixXd(H + ridge * Eigen::MatrixXd::Identity(dim, dim)));
            d = ldlt.solve(-grad);
            if (ldlt.info() == Eigen::Success && grad.dot(d) < 0.0 && d.allFinite()) break;
            ridge = (ridge == 0.0) ? 1e-8 : ridge * 100.0;
            d.setZero();
        }
        const double slope = grad.dot(d);
        if (!(slope < 0.0)) return true;  // no descent direction left
        // Newton decrement in phi units; phi scales with t, so the threshold
        // must too (suboptimality ~ decrement / t).
        if (-slope * 0.5 < 1e-10 * std::max(1.0, t)) return true;

        const double phi0 = barrier_phi(bp, c, t, x);
        double alpha = 1.0;
        bool stepped = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            const Eigen::VectorXd xn = x + alpha * d;
            const double phin = barrier_phi(bp, c, t, xn);
            if (phin <= phi0 + 0.25 * alpha * slope) {
                x = xn;
                stepped = true;
                break;
            }
            alpha *= 0.5;
        }
        ++total_iters;
        if (!stepped) return true;  // line search exhausted at this stage
        if (early_exit(x)) return true;
    }
    return false;
}

}  // namespace

std::optional<Eigen::VectorXd> phase1_feasible_point(const ConvexProgram& p,
                                                     const Eigen::VectorXd* guess) {
    const int n = p.num_vars();
    Eigen::VectorXd x0 = guess ? *guess : Eigen::VectorXd::Zero(n);
    if (x0.size() != n) throw std::invalid_argument("phase1 guess dimension mismatch");

    double worst = -kInf;
    for (const auto& c : p.constraints()) worst = std::max(worst, c.eval(x0));
    if (worst <= -kStrictMargin) return x0;

    BarrierProblem bp{&p, true, 0.0};
    const double s0 = std::max(0.0, worst) + 1.0;
    bp.s_cap = s0 + 10.0;
    Eigen::VectorXd x(n + 1);
    x.head(n) = x0;
    x[n] = s0;

    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c[n] = -1.0;  // maximize -s

    int iters = 0;
    bool found = false;
    Eigen::VectorXd best;
    auto early = [&](const Eigen::VectorXd& xc) {
        Eigen::VectorXd xh = xc.head(n);
        double w = -kInf;
        for (const auto& con : p.constraints()) w = std::max(w, con.eval(xh));
        if (w <= -kStrictMargin) {
            found = true;
            best = xh;
            return true;
        }
        return false;
    };

    const double m = static_cast<double>(bp.count());
    for (double t = 1.0; t <= 1e12; t *= 10.0) {
        center(bp, c, t, x, iters, early);
        if (found) return best;
        if (m / t <= 1e-10) break;
    }
    return std::nullopt;
}

SolveReport solve(const ConvexProgram& p, double tol, const Eigen::VectorXd* warm_start) {
    SolveReport rep;
    auto start = phase1_feasible_point(p, warm_start);
    if (!start) {
        rep.status = SolveReport::Status::Infeasible;
        return rep;
    }
    Eigen::VectorXd x = *start;
    BarrierProblem bp{&p, false, 0.0};
    const Eigen::VectorXd& c = p.objective();
    const double m = static_cast<double>(bp.count());
    const double gap_target = std::max(tol, 1e-12);

    auto no_exit = [](const Eigen::VectorXd&) { return false; };
    bool all_converged = true;
    for (double t = 1.0;; t *= 10.0) {
        all_converged = center(bp, c, t, x, rep.iterations, no_exit) && all_converged;
        if (m / t <= gap_target || t > 1e16) break;
    }

    rep.x = x;
    rep.objective = c.dot(x);
    rep.residuals.reserve(p.constraints().size());
    for (const auto& con : p.constraints()) rep.residuals.push_back(con.eval(x));
    rep.status = all_converged ? SolveReport::Status::Optimal
                               : SolveReport::Status::MaxIterations;
    return rep;
}

}  // namespace insarfopt
