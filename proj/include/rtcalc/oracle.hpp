#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtcalc/fitter.hpp"
#include "rtcalc/geometry.hpp"

namespace rtcalc::oracle {

/// Default seed of every randomized check ("RT" 2024).
constexpr std::uint64_t kDefaultSeed = 0x52542024;

/// Rationals p/q with p, q drawn uniformly from [-range, range] \ {0}.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, int range = 9) : rng_(seed), range_(range) {}
  mpq_class draw();

 private:
  std::mt19937_64 rng_;
  int range_;
};

/// Truncated Taylor series in the chart coordinates, centred at a sample
/// point. `valid` is the total degree up to which coefficients are exact;
/// differentiation lowers it by one.
class Series {
 public:
  struct Space;
  Series() = default;
  Series(const Space* space, const mpq_class& constant);
  static Series variable(const Space* space, std::size_t i, const mpq_class& at);

  const mpq_class& constant() const { return c_[0]; }
  unsigned valid() const { return valid_; }
  bool is_zero() const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series scaled(const mpq_class& k) const;
  Series inverse() const;  // requires a nonzero constant term
  Series derivative(std::size_t var) const;

 private:
  friend struct SeriesAccess;
  const Space* sp_ = nullptr;
  std::vector<mpq_class> c_;
  unsigned valid_ = 0;
};

/// Random point of the chart plus random Taylor coefficients for every
/// opaque function, so all jets are values of one polynomial germ.
class SamplePoint {
 public:
  SamplePoint(ContextPtr ctx, unsigned order, Sampler& sampler);
  ~SamplePoint();
  SamplePoint(const SamplePoint&) = delete;
  SamplePoint& operator=(const SamplePoint&) = delete;
  SamplePoint(SamplePoint&&) noexcept;

  const Context& ctx() const { return *ctx_; }
  unsigned order() const { return order_; }

  /// Values of every coordinate, parameter and jet atom up to the series order.
  const Assignment& assignment() const { return values_; }
  mpq_class eval(const Expr& e) const { return eval_numeric(e, values_); }
  /// Pins an atom (parameter or jet) to a value; jets update the germ.
  void set(AtomId atom, const mpq_class& value);
  /// Moves the point onto {lhs = rhs} by solving for the condition's atom.
  /// Returns false when the condition cannot be met at this point.
  bool impose(const Condition& c);
  /// Moves the point onto all conditions at once. Later conditions are
  /// rewritten through the earlier ones and solved first.
  bool impose_all(const std::vector<Condition>& conditions);

  /// Taylor series of an expression at this point.
  Series series(const Expr& e) const;

 private:
  void rebuild_jets();
  ContextPtr ctx_;
  unsigned order_;
  std::unique_ptr<Series::Space> space_;
  std::vector<mpq_class> coords_;
  std::map<std::string, std::map<std::vector<unsigned>, mpq_class>> germs_;  // Taylor coefficients
  Assignment values_;
  std::map<AtomId, Series> atom_series_;
};

/// Dense tensor of series, row-major like Tensor.
struct STensor {
  unsigned rank = 0;
  std::size_t n = 0;
  std::vector<Series> c;
  std::vector<mpq_class> values() const;
};

/// Curvature at a sample point, assembled independently of the symbolic
/// engine: Riemann from second metric derivatives, Lie derivatives from
/// covariant derivatives.
class NumericGeometry {
 public:
  NumericGeometry(const Metric& g, const SamplePoint& pt);

  const SamplePoint& point() const { return pt_; }
  const STensor& metric() const { return g_; }
  const STensor& riemann() const { return riemann_; }
  const STensor& ricci() const { return ricci_; }
  const Series& scalar() const { return kappa_; }

  STensor tensor(const Tensor& t) const;  // series of symbolic components
  STensor kulkarni_nomizu(const STensor& a, const STensor& b) const;
  STensor conformal() const;
  STensor concircular() const;
  STensor conharmonic() const;
  STensor projective() const;
  STensor outer_square(const std::vector<Expr>& eta) const;
  std::vector<Series> field(const std::vector<Expr>& xi) const;
  std::vector<Series> gradient(const Expr& zeta) const;
  STensor hessian(const Expr& zeta) const;
  STensor lie(const std::vector<Series>& xi, const STensor& t) const;

 private:
  STensor covariant_derivative(const STensor& t) const;
  const SamplePoint& pt_;
  std::size_t n_;
  STensor g_, ginv_, gamma_, riemann_, ricci_;
  Series kappa_;
};

/// Solves target = Σ c_i basis_i at a point; free unknowns are set to zero.
/// Empty when the system has no solution.
std::optional<std::vector<mpq_class>> solve_at_point(const std::vector<mpq_class>& target,
                                                     const std::vector<std::vector<mpq_class>>& basis);

}  // namespace rtcalc::oracle
