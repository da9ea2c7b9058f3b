#include <cmath>
#include <mutex>

#include <Eigen/Cholesky>

#include "schatten/errors.hpp"
#include "schatten/parallel.hpp"
#include "schatten/rng.hpp"
#include "schatten/samplers.hpp"

namespace schatten {

namespace {

constexpr int kBisectionSteps = 60;

// I - T^* T positive definite, i.e. operator norm below one.
template <typename Scalar>
bool operator_norm_below_one(const Matrix<Scalar>& t) {
  if constexpr (std::is_same_v<Scalar, Quaternion>) {
    return operator_norm_below_one<std::complex<double>>(complex_adjoint(t));
  } else {
    Matrix<Scalar> gram = -(t.adjoint() * t);
    gram.diagonal().array() += Scalar(1.0);
    Eigen::LLT<Matrix<Scalar>> llt(gram);
    return llt.info() == Eigen::Success;
  }
}

template <typename Scalar>
bool inside(const Matrix<Scalar>& t, const Exponent& p) {
  if (p.is_infinite()) return operator_norm_below_one(t);
  if (p.value() == 2.0) return frobenius_sq(t) <= 1.0;
  return schatten_norm(t, p) <= 1.0;
}

template <typename Scalar>
Matrix<Scalar> unit_matrix(int n, int i, int j, const Scalar& value) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  m(i, j) = value;
  return m;
}

template <typename Scalar>
std::vector<Scalar> field_units() {
  if constexpr (std::is_same_v<Scalar, double>) return {1.0};
  else if constexpr (std::is_same_v<Scalar, std::complex<double>>) return {{1.0, 0.0}, {0.0, 1.0}};
  else return {Quaternion(1.0), Quaternion::i(), Quaternion::j(), Quaternion::k()};
}

template <typename Scalar>
std::vector<Matrix<Scalar>> basis_for(const SchattenSpec& spec) {
  const int n = spec.n;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Matrix<Scalar>> basis;
  const auto units = field_units<Scalar>();
  switch (spec.subspace) {
    case Subspace::Full:
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          for (const Scalar& u : units) basis.push_back(unit_matrix<Scalar>(n, i, j, u));
      break;
    case Subspace::SelfAdjoint:
      for (int i = 0; i < n; ++i) basis.push_back(unit_matrix<Scalar>(n, i, i, Scalar(1.0)));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (const Scalar& u : units) {
            Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
            m(i, j) = u * r;
            m(j, i) = conj(u) * r;
            basis.push_back(m);
          }
        }
      }
      break;
    case Subspace::AntiSymHermitian:
      if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
            m(i, j) = Scalar(0.0, r);
            m(j, i) = Scalar(0.0, -r);
            basis.push_back(m);
          }
        }
      }
      break;
    case Subspace::ComplexSymmetric:
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          for (const Scalar& u : units) {
            Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
            const Scalar v = i == j ? u : u * r;
            m(i, j) = v;
            m(j, i) = v;
            basis.push_back(m);
          }
        }
      }
      break;
  }
  if (static_cast<long>(basis.size()) != spec.real_dimension())
    throw NumericalError("subspace basis has the wrong dimension");
  return basis;
}

template <typename Scalar>
Matrix<Scalar> combine(const std::vector<Matrix<Scalar>>& basis, const Eigen::VectorXd& coords, int n) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coords[k] != 0.0) m += basis[k] * coords[k];
  return m;
}

template <typename Scalar>
double chord_end(const Matrix<Scalar>& t, const Matrix<Scalar>& dir, const Exponent& p, double far) {
  double lo = 0.0;
  double hi = far;
  for (int s = 0; s < kBisectionSteps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (inside<Scalar>(t + dir * mid, p))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

template <typename Scalar>
HitAndRunDiagnostics walk(const SchattenSpec& spec, const HitAndRunConfig& config,
                          const std::function<void(int, const MatrixSample&)>& visit) {
  const auto basis = basis_for<Scalar>(spec);
  const int n = spec.n;
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  // The ball sits inside the Frobenius ball of radius sqrt(n); twice that is always outside.
  const double far = 2.0 * std::sqrt(static_cast<double>(n)) + 1.0;
  const int chains = config.chains;
  std::vector<long> counts(chains, config.samples / chains);
  for (long k = 0; k < config.samples % chains; ++k) ++counts[k];

  parallel_for(static_cast<std::size_t>(chains), [&](std::size_t chain) {
    std::mt19937_64 rng = make_stream(config.seed, 0x4a11 + chain);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd coords = Eigen::VectorXd::Zero(dim);
    Matrix<Scalar> t = Matrix<Scalar>::Zero(n, n);
    auto step = [&] {
      Eigen::VectorXd w(dim);
      for (Eigen::Index k = 0; k < dim; ++k) w[k] = normal(rng);
      w.normalize();
      const Matrix<Scalar> dir = combine(basis, w, n);
      const double up = chord_end<Scalar>(t, dir, spec.p, far);
      const double down = chord_end<Scalar>(t, Matrix<Scalar>(-dir), spec.p, far);
      const double u = uniform_open(rng);
      const double move = -down + (up + down) * u;
      coords += move * w;
      t = combine(basis, coords, n);
    };
    for (long s = 0; s < config.burn_in; ++s) step();
    for (long s = 0; s < counts[chain]; ++s) {
      for (long k = 0; k < config.thinning; ++k) step();
      visit(static_cast<int>(chain), MatrixSample(t));
    }
  });

  HitAndRunDiagnostics diag;
  diag.chains = chains;
  diag.burn_in = config.burn_in;
  diag.thinning = config.thinning;
  diag.chain_lengths = counts;
  return diag;
}

}  // namespace

ChainLayout HitAndRunDiagnostics::layout() const {
  ChainLayout layout;
  layout.chain_lengths = chain_lengths;
  layout.independent = false;
  return layout;
}

bool in_schatten_ball(const MatrixSample& t, const Exponent& p) {
  return std::visit([&](const auto& m) { return inside(m, p); }, t);
}

std::vector<MatrixSample> subspace_basis(const SchattenSpec& spec) {
  spec.validate();
  std::vector<MatrixSample> out;
  auto copy = [&](const auto& basis) {
    for (const auto& m : basis) out.emplace_back(m);
  };
  switch (spec.field) {
    case Field::Real: copy(basis_for<double>(spec)); break;
    case Field::Complex: copy(basis_for<std::complex<double>>(spec)); break;
    case Field::Quaternion: copy(basis_for<Quaternion>(spec)); break;
  }
  return out;
}

HitAndRunDiagnostics matrix_hit_and_run_visit(const SchattenSpec& spec, const HitAndRunConfig& config,
                                              const std::function<void(int, const MatrixSample&)>& visit) {
  spec.validate();
  if (spec.n > 12) throw SpecificationError("matrix_hit_and_run supports n <= 12");
  if (config.samples < 1 || config.chains < 1 || config.thinning < 1 || config.burn_in < 0)
    throw SpecificationError("bad hit-and-run configuration");
  switch (spec.field) {
    case Field::Real: return walk<double>(spec, config, visit);
    case Field::Complex: return walk<std::complex<double>>(spec, config, visit);
    case Field::Quaternion: return walk<Quaternion>(spec, config, visit);
  }
  throw SpecificationError("unknown field");
}

std::vector<MatrixSample> matrix_hit_and_run(const SchattenSpec& spec, long n_samples, std::uint64_t seed,
                                             long burn_in) {
  HitAndRunConfig config;
  config.samples = n_samples;
  config.seed = seed;
  config.burn_in = burn_in;
  std::vector<MatrixSample> out;
  out.reserve(n_samples);
  std::mutex guard;
  matrix_hit_and_run_visit(spec, config, [&](int, const MatrixSample& m) {
    std::lock_guard<std::mutex> lock(guard);
    out.push_back(m);
  });
  return out;
}

}  // namespace schatten
