#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptheta {

/// Product cone: PSD blocks (stored with svec) followed by a nonnegative
/// orthant. Variables are laid out in that order.
struct ConeSpec {
  std::vector<int> psd_blocks;
  int nonneg = 0;

  int dimension() const;
  /// Barrier degree: sum of block sizes plus orthant length.
  int degree() const;
  int block_offset(int block) const;
  int nonneg_offset() const;
  int num_blocks() const { return static_cast<int>(psd_blocks.size()); }

  Eigen::MatrixXd block(const Eigen::VectorXd& x, int b) const;
  Eigen::VectorXd nonneg_part(const Eigen::VectorXd& x) const;
  void set_block(Eigen::VectorXd& x, int b, const Eigen::MatrixXd& value) const;
  /// The cone's identity element (identity blocks, all-ones orthant).
  Eigen::VectorXd identity() const;
};

enum class Sense { minimize, maximize };

/// optimise c . x subject to A x = b, x in cone.
struct ConicProgram {
  ConeSpec cone;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Sense sense = Sense::minimize;
  std::vector<std::string> row_labels;
  std::string name;

  int num_rows() const { return static_cast<int>(A.rows()); }
  /// Throws std::invalid_argument when dimensions or values are inconsistent.
  void validate() const;
};

struct SolverConfig {
  double gap_tolerance = 1e-8;
  double feasibility_tolerance = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
  double drop_tolerance = 1e-10;
  /// Per-iteration log; null for silence.
  std::ostream* trace = nullptr;

  void validate() const;
};

enum class SolveStatus { optimal, infeasible, unbounded, max_iterations, numerical_failure };

std::string to_string(SolveStatus s);

/// Primal point x, dual point (y, z) and objectives. y and z belong to the
/// minimisation form: A^T y + z = c for minimise, A^T y + z = -c for maximise.
/// Objectives are reported in the program's own sense.
struct Solution {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd z;
  double primal_objective = 0;
  double dual_objective = 0;
  SolveStatus status = SolveStatus::numerical_failure;
  int iterations = 0;
  std::vector<int> dropped_rows;
  double tau = 1;
  double kappa = 0;

  bool optimal() const { return status == SolveStatus::optimal; }
  /// |primal - dual| / (1 + |primal|)
  double relative_gap() const;
};

struct ResidualReport {
  double primal = 0;            // ||Ax - b|| / (1 + ||b||)
  double dual = 0;              // ||A^T y + z - c|| / (1 + ||c||)
  double relative_gap = 0;      // |c.x - b.y| / (1 + |c.x|)
  double complementarity = 0;   // <x, z> / (1 + |c.x|)
  std::vector<double> min_psd_eigenvalue;  // per block
  double min_orthant_entry = 0;            // 0 when the orthant is empty

  double worst_feasibility() const { return std::max(primal, dual); }
  double min_eigenvalue() const;
};

ResidualReport compute_residuals(const ConicProgram& p, const Solution& s);

/// ||Ax - b|| / (1 + ||b||) for a bare primal point.
double primal_residual(const ConicProgram& p, const Eigen::VectorXd& x);

struct RowSelection {
  std::vector<int> kept;
  std::vector<int> dropped;
  /// false when a dropped row's right-hand side contradicts the kept rows
  bool consistent = true;
};

/// Greedy in-order row selection by twice-orthogonalised Gram-Schmidt. A row
/// is dropped when its residual against the kept rows is at most
/// tol * max(1, ||row||).
RowSelection select_independent_rows(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double tol);

/// Homogeneous self-dual primal-dual interior-point method with
/// Nesterov-Todd scaling and Mehrotra predictor-corrector steps.
Solution solve_conic(const ConicProgram& p, const SolverConfig& cfg = {});

/// Writes (A, b, c, cone) as JSON; see docs/conic_program.schema.json.
void write_program_json(std::ostream& out, const ConicProgram& p);

/// Accumulates a ConicProgram term by term. PSD entries are addressed as
/// matrix entries X_ij: add_entry(row, b, i, j, a) contributes a * X_ij.
class ProgramBuilder {
 public:
  int add_psd_block(int size);
  /// Returns the index (within the orthant) of the first new variable.
  int add_nonneg(int count = 1);
  int add_row(double rhs, std::string label);

  void add_entry(int row, int block, int i, int j, double coef);
  void add_nonneg_term(int row, int var, double coef);
  void add_objective_entry(int block, int i, int j, double coef);
  void add_objective_nonneg(int var, double coef);

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  const ConeSpec& cone() const { return cone_; }

  ConicProgram build(Sense sense, std::string name) const;

 private:
  struct Term {
    int row;  // -1 for the objective
    int block;  // -1 for orthant
    int i, j;
    double coef;
  };
  void push(int row, int block, int i, int j, double coef);

  ConeSpec cone_;
  std::vector<double> rhs_;
  std::vector<std::string> labels_;
  std::vector<Term> terms_;
};

}  // namespace ptheta
