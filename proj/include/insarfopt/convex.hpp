// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace insarfopt {

// A convex program: maximize c^T x subject to a list of constraints drawn
// from the classes the SCA builders emit. All constraints are normalized to
// O(1) residuals at construction.
class ConvexProgram {
public:
    enum class Kind { Affine, Quadratic, NormBound, Polynomial, Box };

    struct Constraint {
        Kind kind = Kind::Affine;
        // canonical smooth form g(x) <= 0:
        //   Affine/Box:  (a^T x - b)/scale
        //   Quadratic:   (x^T Q x + q^T x + r)/scale      (Q symmetric PSD)
        //   Polynomial:  (sum_k coef[k] u^(k+1) - bound)/scale, u = s^T x + t
        Eigen::VectorXd a;
        double b = 0.0;
        Eigen::MatrixXd Q;
        Eigen::VectorXd q;
        double r = 0.0;
        std::vector<double> coef;  // coef[k] multiplies u^(k+1), all >= 0
        Eigen::VectorXd s;
        double t = 0.0;
        double bound = 0.0;
        double scale = 1.0;
        std::string label;

        double eval(const Eigen::VectorXd& x) const;
        Eigen::VectorXd grad(const Eigen::VectorXd& x) const;
        void add_hessian(const Eigen::VectorXd& x, double w, Eigen::MatrixXd& H) const;
    };

    explicit ConvexProgram(int num_vars);

    int num_vars() const { return n_; }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    void set_objective(const Eigen::VectorXd& c);
    const Eigen::VectorXd& objective() const { return c_; }

    // a^T x <= b
    void add_affine(const Eigen::VectorXd& a, double b, std::string label = {});
    // x^T Q x + q^T x + r <= 0
    void add_quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q, double r,
                       std::string label = {});
    // ||A x + d|| <= bound (constant right side); lowered to a quadratic
    void add_norm_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& d, double bound,
                        std::string label = {});
    // sum_k coef[k] (s^T x + t)^(k+1) <= bound with nonnegative coef; the domain
    // constraint s^T x + t >= 0 is added automatically.
    void add_polynomial(const std::vector<double>& coef, const Eigen::VectorXd& s, double t,
                        double bound, std::string label = {});
    // lo <= x_i <= hi (either side may be infinite)
    void add_box(int var, double lo, double hi, std::string label = {});

    // Midpoint-inequality spot check on random pairs; returns false if any
    // registered constraint fails to look convex. Used by builders in debug.
    bool convexity_spot_check(int trials, double radius, uint64_t seed) const;

    // One constraint per line, for failure triage.
    std::string debug_dump() const;

private:
    int n_;
    Eigen::VectorXd c_;
    std::vector<Constraint> constraints_;
};

struct SolveReport {
    enum class Status { Optimal, Infeasible, MaxIterations };
    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    std::vector<double> residuals;  // normalized g_i(x) at the solution
    int iterations = 0;             // total Newton iterations
};

// Log-barrier interior-point solve; `tol` is the absolute duality-gap target
// in objective units. Deterministic for identical inputs.
SolveReport solve(const ConvexProgram& p, double tol,
                  const Eigen::VectorXd* warm_start = nullptr);

// Strictly feasible point (margin >= 1e-9 in normalized residuals), or
// nullopt if phase-I proves infeasibility within tolerance. Returns the
// guess unchanged when it is already strictly feasible.
std::optional<Eigen::VectorXd> phase1_feasible_point(const ConvexProgram& p,
                                                     const Eigen::VectorXd* guess = nullptr);

}  // namespace insarfopt
