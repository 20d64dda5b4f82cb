#include "signtest/scatter.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace signtest {

ScatterSpec ScatterSpec::equicorrelated(int p, double rho, double sigma2) {
  if (p < 1) throw std::domain_error("equicorrelated: p must be >= 1");
  if (sigma2 <= 0.0)
    throw std::domain_error("equicorrelated: sigma2 must be positive");
  const double lower = p > 1 ? -1.0 / (p - 1) : -std::numeric_limits<double>::infinity();
  if (!(rho > lower && rho < 1.0)) {
    std::ostringstream msg;
    msg << "equicorrelated: rho = " << rho
        << " outside the admissible interval (";
    if (p > 1)
      msg << lower;
    else
      msg << "-inf";
    msg << ", 1)";
    throw std::domain_error(msg.str());
  }
  ScatterSpec s;
  s.form_ = Form::Equicorrelated;
  s.p_ = p;
  s.rho_ = rho;
  s.sigma2_ = sigma2;
  return s;
}

ScatterSpec ScatterSpec::general_psd(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw std::domain_error("general_psd: matrix must be square and non-empty");
  const double scale = sigma.cwiseAbs().maxCoeff();
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw std::domain_error("general_psd: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.transpose()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("general_psd: eigendecomposition failed");
  Vector lam = es.eigenvalues();  // ascending
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  if (lam.minCoeff() < -1e-10 * std::max(lam_max, 1.0))
    throw std::domain_error("general_psd: matrix has a negative eigenvalue");

  Vector clipped = lam;
  for (Eigen::Index i = 0; i < clipped.size(); ++i)
    if (clipped[i] < 1e-12 * lam_max) clipped[i] = 0.0;

  ScatterSpec s;
  s.form_ = Form::GeneralPsd;
  s.p_ = int(sigma.rows());
  s.dense_ = 0.5 * (sigma + sigma.transpose());
  s.sqrt_ = es.eigenvectors() * clipped.cwiseSqrt().asDiagonal() *
            es.eigenvectors().transpose();
  s.eigs_ = clipped.reverse();  // descending
  return s;
}

Matrix ScatterSpec::dense() const {
  if (form_ == Form::GeneralPsd) return dense_;
  Matrix m = Matrix::Constant(p_, p_, sigma2_ * rho_);
  m.diagonal().setConstant(sigma2_);
  return m;
}

double ScatterSpec::trace() const {
  if (form_ == Form::GeneralPsd) return dense_.trace();
  return sigma2_ * p_;
}

double ScatterSpec::trace_sq() const {
  if (form_ == Form::GeneralPsd) return dense_.squaredNorm();
  // tr(Sigma^2) = sigma2^2 * p * (1 + (p-1) rho^2)
  return sigma2_ * sigma2_ * p_ * (1.0 + (p_ - 1) * rho_ * rho_);
}

Vector ScatterSpec::eigenvalues() const {
  if (form_ == Form::GeneralPsd) return eigs_;
  // sigma2 (1 - rho + p rho) once, sigma2 (1 - rho) with multiplicity p-1
  Vector v(p_);
  const double top = sigma2_ * (1.0 - rho_ + p_ * rho_);
  const double rest = sigma2_ * (1.0 - rho_);
  if (top >= rest) {
    v[0] = top;
    v.tail(p_ - 1).setConstant(rest);
  } else {
    v.head(p_ - 1).setConstant(rest);
    v[p_ - 1] = top;
  }
  return v;
}

void ScatterSpec::apply_sqrt(const Vector& z, Vector& out) const {
  if (z.size() != p_)
    throw std::domain_error("apply_sqrt: dimension mismatch");
  if (form_ == Form::GeneralPsd) {
    out.noalias() = sqrt_ * z;
    return;
  }
  const double b = std::sqrt(1.0 - rho_);
  const double c = std::sqrt(1.0 - rho_ + p_ * rho_);
  const double a = (c - b) / p_;
  const double s = z.sum();
  const double sd = std::sqrt(sigma2_);
  out = sd * (b * z + Vector::Constant(p_, a * s));
}

DistributionModel DistributionModel::normal() { return DistributionModel(); }

DistributionModel DistributionModel::student_t(double nu) {
  if (!(nu > 2.0))
    throw std::domain_error("student_t: nu must exceed 2 (finite covariance)");
  DistributionModel m;
  m.family_ = Family::StudentT;
  m.nu_ = nu;
  return m;
}

DistributionModel DistributionModel::mixture_normal(double weight,
                                                    double scale2) {
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::domain_error("mixture_normal: weight must be in [0, 1]");
  if (!(scale2 > 0.0))
    throw std::domain_error("mixture_normal: scale2 must be positive");
  DistributionModel m;
  m.family_ = Family::MixtureNormal;
  m.weight_ = weight;
  m.scale2_ = scale2;
  return m;
}

DistributionModel DistributionModel::shifted(const Vector& mu) const {
  DistributionModel m = *this;
  m.location_ = mu;
  return m;
}

std::string DistributionModel::family_name() const {
  switch (family_) {
    case Family::Normal: return "normal";
    case Family::StudentT: return "t";
    case Family::MixtureNormal: return "mixture";
  }
  return "?";
}

Dataset sample(const DistributionModel& model, const ScatterSpec& scatter,
               int n, RngStream& stream) {
  if (n < 1) throw std::domain_error("sample: n must be >= 1");
  const int p = scatter.dim();
  if (model.location().size() != 0 && model.location().size() != p)
    throw std::domain_error("sample: location dimension mismatch");

  Dataset ds;
  ds.x.resize(n, p);
  ds.model_tag = model.family_name();
  ds.stream_id = stream.stream_id();

  Vector z(p), row(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z[j] = stream.normal();
    scatter.apply_sqrt(z, row);
    switch (model.family()) {
      case DistributionModel::Family::Normal:
        break;
      case DistributionModel::Family::StudentT: {
        const double s = stream.chi_square(model.nu());
        row *= std::sqrt(model.nu() / s);
        break;
      }
      case DistributionModel::Family::MixtureNormal: {
        if (stream.uniform01() < model.weight())
          row *= std::sqrt(model.scale2());
        break;
      }
    }
    if (model.location().size() != 0) row += model.location();
    ds.x.row(i) = row;
  }
  return ds;
}

double model_covariance_factor(const DistributionModel& model) {
  switch (model.family()) {
    case DistributionModel::Family::Normal:
      return 1.0;
    case DistributionModel::Family::StudentT:
      if (!(model.nu() > 2.0))
        throw std::domain_error(
            "model_covariance_factor: t covariance needs nu > 2");
      return model.nu() / (model.nu() - 2.0);
    case DistributionModel::Family::MixtureNormal:
      return (1.0 - model.weight()) + model.weight() * model.scale2();
  }
  throw std::logic_error("model_covariance_factor: unknown family");
}

double power_shift_delta(int n, int p, const ScatterSpec& scatter,
                         const DistributionModel& model) {
  if (n < 1) throw std::domain_error("power_shift_delta: n must be >= 1");
  if (p != scatter.dim())
    throw std::domain_error("power_shift_delta: p does not match the scatter");
  const double c = model_covariance_factor(model);
  const double tr_c2 = c * c * scatter.trace_sq();
  return 2.0 * std::sqrt(std::sqrt(tr_c2) / (double(n) * double(p)));
}

}  // namespace signtest
