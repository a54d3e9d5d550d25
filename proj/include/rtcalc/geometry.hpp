#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtcalc/expr.hpp"

namespace rtcalc {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense all-covariant tensor of any rank over the chart of a Context.
/// Components are stored row-major with 0-based indices.
class Tensor {
 public:
  Tensor() = default;
  Tensor(ContextPtr ctx, unsigned rank, std::string name = {});
  Tensor(ContextPtr ctx, unsigned rank, std::vector<Expr> components, std::string name = {});

  const ContextPtr& context() const { return ctx_; }
  unsigned rank() const { return rank_; }
  std::size_t dim() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<Expr>& components() const { return c_; }
  std::size_t size() const { return c_.size(); }

  std::size_t offset(std::initializer_list<std::size_t> idx) const;
  std::vector<std::size_t> indices_of(std::size_t offset) const;

  const Expr& operator[](std::size_t off) const { return c_[off]; }
  Expr& operator[](std::size_t off) { return c_[off]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }
  Expr& operator()(std::size_t i, std::size_t j) { return c_[i * n_ + j]; }
  const Expr& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return c_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  Expr& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return c_[((p * n_ + q) * n_ + r) * n_ + s];
  }

  bool is_zero() const;
  Tensor scaled(const Expr& c) const;
  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend Tensor operator-(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b);  // components only

 private:
  ContextPtr ctx_;
  unsigned rank_ = 0;
  std::size_t n_ = 0;
  std::vector<Expr> c_;
  std::string name_;
};

void require_same_shape(const Tensor& a, const Tensor& b);

/// Symmetric nondegenerate (0,2) tensor.
class Metric {
 public:
  /// `g` holds n*n row-major components; throws GeometryError if asymmetric
  /// or if the determinant is identically zero.
  Metric(ContextPtr ctx, std::vector<Expr> g);

  const ContextPtr& context() const { return ctx_; }
  const Context& ctx() const { return *ctx_; }
  std::size_t dim() const { return ctx_->dimension(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
  const Tensor& tensor() const { return g_; }
  const Expr& determinant() const { return det_; }

 private:
  ContextPtr ctx_;
  Tensor g_;
  Expr det_;
};

struct VectorField {
  ContextPtr ctx;
  std::vector<Expr> xi;  // contravariant components
};

struct ScalarField {
  Expr value;
};

/// Γ^k_{ij}, stored as [k][i][j].
struct Christoffel {
  std::size_t n = 0;
  std::vector<Expr> c;
  const Expr& operator()(std::size_t k, std::size_t i, std::size_t j) const { return c[(k * n + i) * n + j]; }
};

Expr determinant(const std::vector<Expr>& m, std::size_t n);  // cofactor expansion
std::vector<Expr> inverse_metric(const Metric& g);             // row-major g^{ij}
Christoffel christoffel(const Metric& g, const std::vector<Expr>& ginv);
Christoffel christoffel(const Metric& g);

/// Everything derived from the metric alone, computed once.
///
/// R_pqrs = g_pa (d_r G^a_qs - d_s G^a_qr + G^b_qs G^a_br - G^b_qr G^a_bs),
/// S_qr = g^ps R_pqrs, kappa = g^qr S_qr.
class Geometry {
 public:
  explicit Geometry(Metric g);

  const Metric& metric() const { return g_; }
  const Context& ctx() const { return g_.ctx(); }
  const ContextPtr& context() const { return g_.context(); }
  std::size_t dim() const { return g_.dim(); }
  const std::vector<Expr>& inverse() const { return ginv_; }
  const Expr& inverse(std::size_t i, std::size_t j) const { return ginv_[i * dim() + j]; }
  const Christoffel& christoffel() const { return gamma_; }
  const Tensor& riemann() const { return riemann_; }
  const Tensor& ricci() const { return ricci_; }
  const Expr& scalar() const { return kappa_; }
  Tensor einstein() const;

 private:
  Metric g_;
  std::vector<Expr> ginv_;
  Christoffel gamma_;
  Tensor riemann_;
  Tensor ricci_;
  Expr kappa_;
};

Tensor riemann(const Metric& g);
Tensor ricci(const Metric& g);
ScalarField scalar_curvature(const Metric& g);
Tensor einstein(const Metric& g);

VectorField gradient(const Geometry& geo, const ScalarField& zeta);
Tensor hessian(const Geometry& geo, const ScalarField& zeta);
VectorField gradient(const Metric& g, const ScalarField& zeta);
Tensor hessian(const Metric& g, const ScalarField& zeta);

/// (nabla T)_{m i1 ... ik}: the derivative index comes first.
Tensor covariant_derivative(const Tensor& t, const Christoffel& gamma);

/// Partial derivative of every component along coordinate `m`.
Tensor partial(const Tensor& t, std::size_t m);

/// Coordinate basis vector d/dx^i.
VectorField coordinate_field(const ContextPtr& ctx, std::size_t i);

}  // namespace rtcalc
