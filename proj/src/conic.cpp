#include "ptheta/conic.hpp"

#include "ptheta/svec.hpp"

#include <json.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace ptheta {

// ---------------------------------------------------------------------------
// ConeSpec / ConicProgram

int ConeSpec::dimension() const {
  int d = nonneg;
  for (int s : psd_blocks) d += svec_size(s);
  return d;
}

int ConeSpec::degree() const {
  return std::accumulate(psd_blocks.begin(), psd_blocks.end(), nonneg);
}

int ConeSpec::block_offset(int block) const {
  int off = 0;
  for (int b = 0; b < block; ++b) off += svec_size(psd_blocks[b]);
  return off;
}

int ConeSpec::nonneg_offset() const { return block_offset(num_blocks()); }

Eigen::MatrixXd ConeSpec::block(const Eigen::VectorXd& x, int b) const {
  const int s = psd_blocks[b];
  return smat(x.segment(block_offset(b), svec_size(s)), s);
}

Eigen::VectorXd ConeSpec::nonneg_part(const Eigen::VectorXd& x) const {
  return x.segment(nonneg_offset(), nonneg);
}

void ConeSpec::set_block(Eigen::VectorXd& x, int b, const Eigen::MatrixXd& value) const {
  const int s = psd_blocks[b];
  x.segment(block_offset(b), svec_size(s)) = svec(value);
}

Eigen::VectorXd ConeSpec::identity() const {
  Eigen::VectorXd e(dimension());
  for (int b = 0; b < num_blocks(); ++b)
    set_block(e, b, Eigen::MatrixXd::Identity(psd_blocks[b], psd_blocks[b]));
  e.tail(nonneg).setOnes();
  return e;
}

void ConicProgram::validate() const {
  for (int s : cone.psd_blocks)
    if (s < 1) throw std::invalid_argument("PSD block sizes must be positive");
  if (cone.nonneg < 0) throw std::invalid_argument("orthant length must be nonnegative");
  const int n = cone.dimension();
  if (c.size() != n || A.cols() != n)
    throw std::invalid_argument("objective / constraint width does not match cone dimension");
  if (A.rows() != b.size()) throw std::invalid_argument("A and b row counts differ");
  if (!row_labels.empty() && static_cast<Eigen::Index>(row_labels.size()) != b.size())
    throw std::invalid_argument("row label count differs from row count");
  if (!b.allFinite() || !c.allFinite() || !A.allFinite())
    throw std::invalid_argument("program data must be finite");
}

void SolverConfig::validate() const {
  if (!(gap_tolerance > 0) || !(feasibility_tolerance > 0) || !(drop_tolerance > 0))
    throw std::invalid_argument("solver tolerances must be strictly positive");
  if (!(step_fraction > 0 && step_fraction < 1))
    throw std::invalid_argument("step fraction must lie in (0, 1)");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

double Solution::relative_gap() const {
  return std::abs(primal_objective - dual_objective) / (1.0 + std::abs(primal_objective));
}

double ResidualReport::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : min_psd_eigenvalue) m = std::min(m, v);
  return m;
}

// ---------------------------------------------------------------------------
// Residuals

double primal_residual(const ConicProgram& p, const Eigen::VectorXd& x) {
  return (p.A * x - p.b).norm() / (1.0 + p.b.norm());
}

ResidualReport compute_residuals(const ConicProgram& p, const Solution& s) {
  ResidualReport r;
  const Eigen::VectorXd c = p.sense == Sense::maximize ? Eigen::VectorXd(-p.c) : p.c;
  r.primal = primal_residual(p, s.x);
  const double pobj = c.dot(s.x);
  if (s.y.size() == p.A.rows() && s.z.size() == s.x.size()) {
    r.dual = (p.A.transpose() * s.y + s.z - c).norm() / (1.0 + c.norm());
    r.relative_gap = std::abs(pobj - p.b.dot(s.y)) / (1.0 + std::abs(pobj));
    r.complementarity = std::abs(s.x.dot(s.z)) / (1.0 + std::abs(pobj));
  }
  for (int b = 0; b < p.cone.num_blocks(); ++b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.cone.block(s.x, b),
                                                      Eigen::EigenvaluesOnly);
    r.min_psd_eigenvalue.push_back(es.eigenvalues()(0));
  }
  if (p.cone.nonneg > 0) r.min_orthant_entry = p.cone.nonneg_part(s.x).minCoeff();
  return r;
}

// ---------------------------------------------------------------------------
// Presolve

RowSelection select_independent_rows(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double tol) {
  RowSelection sel;
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd q(a.cols(), std::min<Eigen::Index>(m, a.cols()));
  Eigen::VectorXd beta(q.cols());  // b expressed against the orthonormal rows
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd v = a.row(i).transpose();
    const double norm = v.norm();
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(rank);
    for (int pass = 0; pass < 2 && rank > 0; ++pass) {
      const Eigen::VectorXd h = q.leftCols(rank).transpose() * v;
      v -= q.leftCols(rank) * h;
      coef += h;
    }
    const double res = v.norm();
    const double predicted = rank > 0 ? coef.dot(beta.head(rank)) : 0.0;
    if (res <= tol * std::max(1.0, norm)) {
      sel.dropped.push_back(static_cast<int>(i));
      const double scale = 1.0 + std::abs(b(i)) + std::abs(predicted);
      if (std::abs(b(i) - predicted) > std::sqrt(tol) * scale) sel.consistent = false;
      continue;
    }
    q.col(rank) = v / res;
    beta(rank) = (b(i) - predicted) / res;
    ++rank;
    sel.kept.push_back(static_cast<int>(i));
  }
  return sel;
}

// ---------------------------------------------------------------------------
// Interior-point machinery

namespace {

struct BlockScaling {
  Eigen::MatrixXd r;       // W u = r^T U r
  Eigen::MatrixXd r_inv;
  Eigen::VectorXd lambda;  // diagonal of the scaled point
  Eigen::MatrixXd theta;   // matrix of W^T W in svec coordinates
};

/// Nesterov-Todd scaling W with W z = W^{-T} x = lambda.
struct Scaling {
  std::vector<BlockScaling> blocks;
  Eigen::VectorXd w;  // orthant: W = diag(w)
  Eigen::VectorXd lambda;
};

class ProductCone {
 public:
  explicit ProductCone(const ConeSpec& spec) : spec_(spec) {
    for (int b = 0; b < spec.num_blocks(); ++b) offsets_.push_back(spec.block_offset(b));
    nonneg_offset_ = spec.nonneg_offset();
  }

  int num_blocks() const { return spec_.num_blocks(); }
  int size(int b) const { return spec_.psd_blocks[b]; }
  int dim(int b) const { return svec_size(size(b)); }
  int offset(int b) const { return offsets_[b]; }
  int nonneg() const { return spec_.nonneg; }
  int nonneg_offset() const { return nonneg_offset_; }

  Eigen::MatrixXd mat(const Eigen::VectorXd& v, int b) const {
    return smat(v.segment(offset(b), dim(b)), size(b));
  }

  /// false when x or z is not strictly interior
  bool compute_scaling(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                       Scaling& out) const {
    out.blocks.resize(num_blocks());
    out.lambda.resize(x.size());
    for (int b = 0; b < num_blocks(); ++b) {
      Eigen::LLT<Eigen::MatrixXd> lx(mat(x, b));
      Eigen::LLT<Eigen::MatrixXd> lz(mat(z, b));
      if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
      const Eigen::MatrixXd l = lx.matrixL();
      const Eigen::MatrixXd lzm = lz.matrixL();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(lzm.transpose() * l,
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::VectorXd s = svd.singularValues();
      if (s.minCoeff() <= 0) return false;
      const Eigen::VectorXd inv_sqrt = s.cwiseSqrt().cwiseInverse();
      BlockScaling& bs = out.blocks[b];
      bs.r = l * svd.matrixV() * inv_sqrt.asDiagonal();
      bs.r_inv = inv_sqrt.asDiagonal() * svd.matrixU().transpose() * lzm.transpose();
      bs.lambda = s;
      bs.theta = symmetric_kron(Eigen::MatrixXd(bs.r * bs.r.transpose()));
      out.lambda.segment(offset(b), dim(b)) = svec(Eigen::MatrixXd(s.asDiagonal()));
    }
    const Eigen::VectorXd xo = x.tail(nonneg()), zo = z.tail(nonneg());
    if (nonneg() > 0 && (xo.minCoeff() <= 0 || zo.minCoeff() <= 0)) return false;
    out.w = (xo.array() / zo.array()).sqrt();
    out.lambda.tail(nonneg()) = (xo.array() * zo.array()).sqrt();
    return true;
  }

  // W v
  Eigen::VectorXd apply_w(const Scaling& sc, const Eigen::VectorXd& v) const {
    return apply_blocks(sc, v, [](const BlockScaling& bs, const Eigen::MatrixXd& m) {
      return Eigen::MatrixXd(bs.r.transpose() * m * bs.r);
    }, [&](const Eigen::VectorXd& o) { return Eigen::VectorXd(sc.w.cwiseProduct(o)); });
  }

  // W^T v
  Eigen::VectorXd apply_w_transpose(const Scaling& sc, const Eigen::VectorXd& v) const {
    return apply_blocks(sc, v, [](const BlockScaling& bs, const Eigen::MatrixXd& m) {
      return Eigen::MatrixXd(bs.r * m * bs.r.transpose());
    }, [&](const Eigen::VectorXd& o) { return Eigen::VectorXd(sc.w.cwiseProduct(o)); });
  }

  // W^{-T} v
  Eigen::VectorXd apply_w_inv_transpose(const Scaling& sc, const Eigen::VectorXd& v) const {
    return apply_blocks(sc, v, [](const BlockScaling& bs, const Eigen::MatrixXd& m) {
      return Eigen::MatrixXd(bs.r_inv * m * bs.r_inv.transpose());
    }, [&](const Eigen::VectorXd& o) { return Eigen::VectorXd(o.cwiseQuotient(sc.w)); });
  }

  // W^T W v
  Eigen::VectorXd apply_theta(const Scaling& sc, const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(v.size());
    for (int b = 0; b < num_blocks(); ++b)
      out.segment(offset(b), dim(b)) = sc.blocks[b].theta * v.segment(offset(b), dim(b));
    out.tail(nonneg()) = sc.w.cwiseAbs2().cwiseProduct(v.tail(nonneg()));
    return out;
  }

  /// Jordan product u o v
  Eigen::VectorXd jordan(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(u.size());
    for (int b = 0; b < num_blocks(); ++b) {
      const Eigen::MatrixXd um = mat(u, b), vm = mat(v, b);
      out.segment(offset(b), dim(b)) = svec(Eigen::MatrixXd(0.5 * (um * vm + vm * um)));
    }
    out.tail(nonneg()) = u.tail(nonneg()).cwiseProduct(v.tail(nonneg()));
    return out;
  }

  /// Solves lambda o u = v for u (lambda diagonal in every block).
  Eigen::VectorXd lambda_solve(const Scaling& sc, const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(v.size());
    for (int b = 0; b < num_blocks(); ++b) {
      const Eigen::VectorXd& l = sc.blocks[b].lambda;
      Eigen::MatrixXd m = mat(v, b);
      for (int j = 0; j < size(b); ++j)
        for (int i = 0; i < size(b); ++i) m(i, j) *= 2.0 / (l(i) + l(j));
      out.segment(offset(b), dim(b)) = svec(m);
    }
    out.tail(nonneg()) = v.tail(nonneg()).cwiseQuotient(sc.lambda.tail(nonneg()));
    return out;
  }

  /// Largest step a with lambda + a * d in the cone (infinity if unbounded).
  double max_step(const Scaling& sc, const Eigen::VectorXd& d) const {
    double step = std::numeric_limits<double>::infinity();
    for (int b = 0; b < num_blocks(); ++b) {
      const Eigen::VectorXd inv_sqrt = sc.blocks[b].lambda.cwiseSqrt().cwiseInverse();
      const Eigen::MatrixXd m = inv_sqrt.asDiagonal() * mat(d, b) * inv_sqrt.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues()(0);
      if (lo < 0) step = std::min(step, -1.0 / lo);
    }
    for (int i = 0; i < nonneg(); ++i) {
      const double di = d(nonneg_offset() + i);
      if (di < 0) step = std::min(step, -sc.lambda(nonneg_offset() + i) / di);
    }
    return step;
  }

  /// A Theta A^T
  Eigen::MatrixXd schur(const Scaling& sc, const Eigen::MatrixXd& a) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.rows());
    for (int b = 0; b < num_blocks(); ++b) {
      const auto ab = a.middleCols(offset(b), dim(b));
      const Eigen::MatrixXd at = ab * sc.blocks[b].theta;
      m.noalias() += at * ab.transpose();
    }
    if (nonneg() > 0) {
      const auto ao = a.rightCols(nonneg());
      m.noalias() += ao * sc.w.cwiseAbs2().asDiagonal() * ao.transpose();
    }
    return m;
  }

 private:
  template <typename BlockOp, typename OrthantOp>
  Eigen::VectorXd apply_blocks(const Scaling& sc, const Eigen::VectorXd& v, BlockOp block_op,
                               OrthantOp orthant_op) const {
    Eigen::VectorXd out(v.size());
    for (int b = 0; b < num_blocks(); ++b)
      out.segment(offset(b), dim(b)) = svec(block_op(sc.blocks[b], mat(v, b)));
    out.tail(nonneg()) = orthant_op(v.tail(nonneg()));
    return out;
  }

  const ConeSpec& spec_;
  std::vector<int> offsets_;
  int nonneg_offset_ = 0;
};

struct Direction {
  Eigen::VectorXd x, y, z;
  double tau = 0, kappa = 0;
};

/// Factorised reduced Newton system for one iteration.
class NewtonSystem {
 public:
  NewtonSystem(const ProductCone& cone, const Scaling& sc, const Eigen::MatrixXd& a,
               const Eigen::VectorXd& b, const Eigen::VectorXd& c, double tau, double kappa)
      : cone_(cone), sc_(sc), a_(a), b_(b), c_(c), tau_(tau), kappa_(kappa) {
    Eigen::MatrixXd m = cone.schur(sc, a);
    llt_.compute(m);
    if (llt_.info() != Eigen::Success) {
      const double shift = 1e-13 * std::max(1.0, m.diagonal().maxCoeff());
      m.diagonal().array() += shift;
      llt_.compute(m);
    }
    ok_ = llt_.info() == Eigen::Success;
    if (!ok_) return;
    m_ = std::move(m);
    theta_c_ = cone.apply_theta(sc, c);
    u_ = a * theta_c_;
    v1_ = solve_m(u_ + b);
  }

  bool ok() const { return ok_; }

  /// Solves the linearised system with residual weight eta, scaled
  /// complementarity target ds and tau-kappa target dk.
  Direction solve(double eta, const Eigen::VectorXd& rp, const Eigen::VectorXd& rd,
                  double rg, const Eigen::VectorXd& ds, double dk) const {
    const Eigen::VectorXd q = cone_.lambda_solve(sc_, ds);
    const Eigen::VectorXd wq = cone_.apply_w_transpose(sc_, q);
    const Eigen::VectorXd theta_rd = cone_.apply_theta(sc_, rd);
    const Eigen::VectorXd rhs = eta * rp - a_ * wq + eta * (a_ * theta_rd);
    const Eigen::VectorXd v2 = solve_m(rhs);

    const Eigen::VectorXd ub = u_ - b_;
    const double denom = ub.dot(v1_) - c_.dot(theta_c_) - kappa_ / tau_;
    const double num = eta * rg - ub.dot(v2) - c_.dot(wq) + eta * c_.dot(theta_rd) - dk / tau_;

    Direction d;
    d.tau = num / denom;
    d.y = v2 + v1_ * d.tau;
    const Eigen::VectorXd aty = a_.transpose() * d.y;
    d.x = cone_.apply_theta(sc_, Eigen::VectorXd(aty - c_ * d.tau - eta * rd)) + wq;
    d.z = eta * rd + c_ * d.tau - aty;
    // refine against A dx - b dtau = eta rp while that helps; the correction
    // leaves the dual and complementarity equations intact
    Eigen::VectorXd r1 = eta * rp - (a_ * d.x - b_ * d.tau);
    for (int k = 0; k < 2; ++k) {
      const Eigen::VectorXd dy = solve_m(r1);
      const Eigen::VectorXd atdy = a_.transpose() * dy;
      const Eigen::VectorXd dx = d.x + cone_.apply_theta(sc_, atdy);
      Eigen::VectorXd r2 = eta * rp - (a_ * dx - b_ * d.tau);
      if (!(r2.norm() < 0.5 * r1.norm())) break;
      d.y += dy;
      d.x = dx;
      d.z -= atdy;
      r1 = std::move(r2);
    }
    d.kappa = (dk - kappa_ * d.tau) / tau_;
    return d;
  }

 private:
  Eigen::VectorXd solve_m(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd sol = llt_.solve(rhs);
    // one step of iterative refinement
    sol += llt_.solve(Eigen::VectorXd(rhs - m_ * sol));
    return sol;
  }

  const ProductCone& cone_;
  const Scaling& sc_;
  const Eigen::MatrixXd& a_;
  const Eigen::VectorXd& b_;
  const Eigen::VectorXd& c_;
  double tau_, kappa_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd m_;
  Eigen::VectorXd theta_c_, u_, v1_;
  bool ok_ = false;
};

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& a, const std::vector<int>& rows) {
  Eigen::MatrixXd out(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = a.row(rows[i]);
  return out;
}

Eigen::VectorXd take_entries(const Eigen::VectorXd& v, const std::vector<int>& rows) {
  Eigen::VectorXd out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out(i) = v(rows[i]);
  return out;
}

}  // namespace

Solution solve_conic(const ConicProgram& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();

  const Eigen::VectorXd c = p.sense == Sense::maximize ? Eigen::VectorXd(-p.c) : p.c;
  const double sign = p.sense == Sense::maximize ? -1.0 : 1.0;
  const RowSelection rows = select_independent_rows(p.A, p.b, cfg.drop_tolerance);

  Solution sol;
  sol.dropped_rows = rows.dropped;
  const int n = p.cone.dimension();
  sol.x = Eigen::VectorXd::Zero(n);
  sol.z = Eigen::VectorXd::Zero(n);
  sol.y = Eigen::VectorXd::Zero(p.A.rows());
  if (!rows.consistent) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }

  const Eigen::MatrixXd a = take_rows(p.A, rows.kept);
  const Eigen::VectorXd b = take_entries(p.b, rows.kept);
  const ProductCone cone(p.cone);
  const Eigen::VectorXd e = p.cone.identity();
  const double nu = p.cone.degree() + 1.0;
  const double b_norm = b.norm(), c_norm = c.norm();

  Eigen::VectorXd x = (1.0 + (b.size() ? b.lpNorm<Eigen::Infinity>() : 0.0)) * e;
  Eigen::VectorXd z = (1.0 + (c.size() ? c.lpNorm<Eigen::Infinity>() : 0.0)) * e;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(b.size());
  double tau = 1.0, kappa = 1.0;

  auto finish = [&](SolveStatus status, double scale) {
    sol.status = status;
    sol.x = x / scale;
    sol.z = z / scale;
    for (std::size_t i = 0; i < rows.kept.size(); ++i) sol.y(rows.kept[i]) = y(i) / scale;
    sol.primal_objective = sign * c.dot(sol.x);
    sol.dual_objective = sign * b.dot(y / scale);
    sol.tau = tau;
    sol.kappa = kappa;
    return sol;
  };

  for (int iter = 0;; ++iter) {
    sol.iterations = iter;
    const Eigen::VectorXd rp = b * tau - a * x;
    const Eigen::VectorXd rd = c * tau - a.transpose() * y - z;
    const double rg = b.dot(y) - c.dot(x) - kappa;

    const double pres = rp.norm() / tau / (1.0 + b_norm);
    const double dres = rd.norm() / tau / (1.0 + c_norm);
    const double pobj = c.dot(x) / tau, dobj = b.dot(y) / tau;
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (pres <= cfg.feasibility_tolerance && dres <= cfg.feasibility_tolerance &&
        gap <= cfg.gap_tolerance)
      return finish(SolveStatus::optimal, tau);

    const double bty = b.dot(y), ctx = c.dot(x);
    const bool certificate_regime = iter > 0 && tau < kappa;
    if (certificate_regime && bty > 0 && (a.transpose() * y + z).norm() / bty <= cfg.feasibility_tolerance)
      return finish(SolveStatus::infeasible, bty);
    if (certificate_regime && ctx < 0 && (a * x).norm() / -ctx <= cfg.feasibility_tolerance)
      return finish(SolveStatus::unbounded, -ctx);
    if (iter >= cfg.max_iterations) return finish(SolveStatus::max_iterations, tau);
    if (cfg.trace)
      *cfg.trace << iter << " pobj " << pobj << " dobj " << dobj << " pres " << pres << " dres " << dres
                 << " gap " << gap << " tau " << tau << " kappa " << kappa << '\n';

    Scaling sc;
    if (!cone.compute_scaling(x, z, sc)) return finish(SolveStatus::numerical_failure, tau);
    const NewtonSystem newton(cone, sc, a, b, c, tau, kappa);
    if (!newton.ok()) return finish(SolveStatus::numerical_failure, tau);

    const double mu = (x.dot(z) + tau * kappa) / nu;
    const Eigen::VectorXd lambda_sq = cone.jordan(sc.lambda, sc.lambda);

    // predictor
    const Direction aff = newton.solve(1.0, rp, rd, rg, -lambda_sq, -tau * kappa);
    const Eigen::VectorXd dx_aff = cone.apply_w_inv_transpose(sc, aff.x);
    const Eigen::VectorXd dz_aff = cone.apply_w(sc, aff.z);
    double step_aff = std::min(cone.max_step(sc, dx_aff), cone.max_step(sc, dz_aff));
    if (aff.tau < 0) step_aff = std::min(step_aff, -tau / aff.tau);
    if (aff.kappa < 0) step_aff = std::min(step_aff, -kappa / aff.kappa);
    step_aff = std::min(1.0, step_aff);
    const double sigma = std::pow(1.0 - step_aff, 3);

    // corrector
    const Eigen::VectorXd ds =
        -lambda_sq - cone.jordan(dx_aff, dz_aff) + sigma * mu * cone.jordan(e, e);
    const double dk = -tau * kappa - aff.tau * aff.kappa + sigma * mu;
    const Direction d = newton.solve(1.0 - sigma, rp, rd, rg, ds, dk);
    const Eigen::VectorXd dx = cone.apply_w_inv_transpose(sc, d.x);
    const Eigen::VectorXd dz = cone.apply_w(sc, d.z);
    double step = std::min(cone.max_step(sc, dx), cone.max_step(sc, dz));
    if (d.tau < 0) step = std::min(step, -tau / d.tau);
    if (d.kappa < 0) step = std::min(step, -kappa / d.kappa);
    step = std::min(1.0, cfg.step_fraction * step);
    if (!(step > 1e-14)) return finish(SolveStatus::numerical_failure, tau);

    x += step * d.x;
    y += step * d.y;
    z += step * d.z;
    tau += step * d.tau;
    kappa += step * d.kappa;
  }
}

// ---------------------------------------------------------------------------
// JSON dump

void write_program_json(std::ostream& out, const ConicProgram& p) {
  nlohmann::json j;
  j["name"] = p.name;
  j["sense"] = p.sense == Sense::minimize ? "minimize" : "maximize";
  j["cone"] = {{"psd_blocks", p.cone.psd_blocks}, {"nonneg", p.cone.nonneg}};
  j["vectorization"] = "svec_lower_colmajor_sqrt2";
  j["c"] = std::vector<double>(p.c.data(), p.c.data() + p.c.size());
  j["b"] = std::vector<double>(p.b.data(), p.b.data() + p.b.size());
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.A.rows(); ++i)
    for (Eigen::Index k = 0; k < p.A.cols(); ++k)
      if (p.A(i, k) != 0.0) entries.push_back({i, k, p.A(i, k)});
  j["A"] = {{"rows", p.A.rows()}, {"cols", p.A.cols()}, {"entries", entries}};
  j["row_labels"] = p.row_labels;
  out << j.dump(1) << '\n';
}

// ---------------------------------------------------------------------------
// ProgramBuilder

int ProgramBuilder::add_psd_block(int size) {
  if (size < 1) throw std::invalid_argument("PSD block size must be positive");
  cone_.psd_blocks.push_back(size);
  return cone_.num_blocks() - 1;
}

int ProgramBuilder::add_nonneg(int count) {
  const int first = cone_.nonneg;
  cone_.nonneg += count;
  return first;
}

int ProgramBuilder::add_row(double rhs, std::string label) {
  rhs_.push_back(rhs);
  labels_.push_back(std::move(label));
  return num_rows() - 1;
}

void ProgramBuilder::push(int row, int block, int i, int j, double coef) {
  if (row >= num_rows()) throw std::out_of_range("row index out of range");
  if (block >= cone_.num_blocks()) throw std::out_of_range("block index out of range");
  if (block >= 0) {
    const int s = cone_.psd_blocks[block];
    if (i < 0 || j < 0 || i >= s || j >= s) throw std::out_of_range("entry out of range");
  } else if (i < 0 || i >= cone_.nonneg) {
    throw std::out_of_range("orthant variable out of range");
  }
  terms_.push_back({row, block, i, j, coef});
}

void ProgramBuilder::add_entry(int row, int block, int i, int j, double coef) {
  push(row, block, i, j, coef);
}

void ProgramBuilder::add_nonneg_term(int row, int var, double coef) {
  push(row, -1, var, 0, coef);
}

void ProgramBuilder::add_objective_entry(int block, int i, int j, double coef) {
  push(-1, block, i, j, coef);
}

void ProgramBuilder::add_objective_nonneg(int var, double coef) { push(-1, -1, var, 0, coef); }

ConicProgram ProgramBuilder::build(Sense sense, std::string name) const {
  ConicProgram p;
  p.cone = cone_;
  p.sense = sense;
  p.name = std::move(name);
  const int n = cone_.dimension();
  p.A = Eigen::MatrixXd::Zero(num_rows(), n);
  p.b = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), num_rows());
  p.c = Eigen::VectorXd::Zero(n);
  p.row_labels = labels_;
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  for (const Term& t : terms_) {
    int col;
    double coef = t.coef;
    if (t.block >= 0) {
      col = cone_.block_offset(t.block) + svec_index(cone_.psd_blocks[t.block], t.i, t.j);
      if (t.i != t.j) coef *= inv_root2;
    } else {
      col = cone_.nonneg_offset() + t.i;
    }
    if (t.row < 0)
      p.c(col) += coef;
    else
      p.A(t.row, col) += coef;
  }
  return p;
}

}  // namespace ptheta
