#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "helipos/errors.hpp"

namespace helipos {

inline constexpr double kDefaultGuard = 1e-6;

/// Point at which coefficient functions are evaluated. The momentum must be
/// nonzero and must stay outside the guard band around kappa3 = -1, where the
/// helicity correction terms are singular.
struct EvalContext {
  std::array<double, 3> p{0.0, 0.0, 1.0};
  double lambda = 0.0;
  double guard = kDefaultGuard;

  double p_norm() const { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }
  double kappa3() const { return p[2] / p_norm(); }

  void check() const {
    const double n = p_norm();
    if (n <= 0.0)
      throw DegenerateMomentumError("evaluation at |p| = 0");
    if (1.0 + p[2] / n <= guard)
      throw GuardedSingularityError("evaluation inside the guard band around kappa3 = -1");
  }
};

/// Immutable complex-valued expression tree over the momentum components
/// p1, p2, p3 and the real helicity parameter lambda. Supports exact symbolic
/// partial derivatives of any order; this is what keeps nested commutators of
/// first-order operators closed without a pre-declared jet depth.
///
/// The only square root ever built is |p| = sqrt(p1^2 + p2^2 + p3^2)
/// (obtainable through momentum_norm()), so structural conjugation and
/// differentiation stay exact on the guarded domain.
class Expr {
 public:
  enum class Kind : unsigned char {
    Constant,    // complex literal
    Momentum,    // p_k, k in {1,2,3}
    Helicity,    // the parameter lambda
    Sum,         // n-ary
    Product,     // n-ary
    Negate,
    IntPower,    // child ^ n, n >= 2
    Reciprocal,  // 1 / child
    Sqrt,        // sqrt(child); only applied to p.p
  };

  using Complex = std::complex<double>;

  Expr() : node_(zero().node_) {}

  // -- factories ------------------------------------------------------------

  static Expr constant(Complex v) { return make(Kind::Constant, v, 0, {}); }
  static Expr constant(double v) { return constant(Complex(v, 0.0)); }
  static Expr zero() {
    static const Expr z = make(Kind::Constant, Complex(0.0), 0, {});
    return z;
  }
  static Expr one() {
    static const Expr o = make(Kind::Constant, Complex(1.0), 0, {});
    return o;
  }
  static Expr imaginary_unit() {
    static const Expr i = make(Kind::Constant, Complex(0.0, 1.0), 0, {});
    return i;
  }

  /// p_axis for axis in {1,2,3}.
  static Expr momentum(int axis) {
    require_axis(axis);
    return make(Kind::Momentum, Complex{}, axis, {});
  }

  /// The helicity parameter lambda; evaluates to EvalContext::lambda.
  static Expr helicity() { return make(Kind::Helicity, Complex{}, 0, {}); }

  /// |p| = sqrt(p1^2 + p2^2 + p3^2).
  static Expr momentum_norm() {
    Expr pp = sum({momentum(1).pow_int(2), momentum(2).pow_int(2), momentum(3).pow_int(2)});
    return make(Kind::Sqrt, Complex{}, 0, {std::move(pp)});
  }

  /// kappa_axis = p_axis / |p|.
  static Expr kappa(int axis) { return momentum(axis) * momentum_norm().reciprocal(); }

  static Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Complex c{};
    for (auto& t : terms) {
      if (t.kind() == Kind::Constant) {
        c += t.node_->value;
      } else if (t.kind() == Kind::Sum) {
        for (const auto& s : t.node_->children) flat.push_back(s);
      } else {
        flat.push_back(std::move(t));
      }
    }
    if (c != Complex{}) flat.push_back(constant(c));
    if (flat.empty()) return zero();
    if (flat.size() == 1) return flat.front();
    return make(Kind::Sum, Complex{}, 0, std::move(flat));
  }

  static Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Complex c{1.0, 0.0};
    for (auto& f : factors) {
      if (f.kind() == Kind::Constant) {
        c *= f.node_->value;
      } else if (f.kind() == Kind::Product) {
        for (const auto& s : f.node_->children) {
          if (s.kind() == Kind::Constant)
            c *= s.node_->value;
          else
            flat.push_back(s);
        }
      } else {
        flat.push_back(std::move(f));
      }
    }
    if (c == Complex{}) return zero();
    if (c != Complex{1.0, 0.0}) flat.insert(flat.begin(), constant(c));
    if (flat.empty()) return one();
    if (flat.size() == 1) return flat.front();
    return make(Kind::Product, Complex{}, 0, std::move(flat));
  }

  // -- algebra ---------------------------------------------------------------

  friend Expr operator+(Expr a, Expr b) { return sum({std::move(a), std::move(b)}); }
  friend Expr operator-(Expr a, Expr b) { return sum({std::move(a), -std::move(b)}); }
  friend Expr operator*(Expr a, Expr b) { return product({std::move(a), std::move(b)}); }
  friend Expr operator*(Complex c, Expr e) { return product({constant(c), std::move(e)}); }
  friend Expr operator*(double c, Expr e) { return product({constant(c), std::move(e)}); }

  Expr operator-() const {
    if (kind() == Kind::Constant) return constant(-node_->value);
    if (kind() == Kind::Negate) return node_->children.front();
    return make(Kind::Negate, Complex{}, 0, {*this});
  }

  /// Integer power. Negative exponents go through reciprocal().
  Expr pow_int(int n) const {
    if (n < 0) return pow_int(-n).reciprocal();
    if (n == 0) return one();
    if (n == 1) return *this;
    if (kind() == Kind::Constant) {
      Complex v{1.0, 0.0};
      for (int k = 0; k < n; ++k) v *= node_->value;
      return constant(v);
    }
    return make(Kind::IntPower, Complex{}, n, {*this});
  }

  Expr reciprocal() const {
    if (kind() == Kind::Constant) return constant(Complex(1.0, 0.0) / node_->value);
    if (kind() == Kind::Reciprocal) return node_->children.front();
    return make(Kind::Reciprocal, Complex{}, 0, {*this});
  }

  /// Structural complex conjugate. Exact for this node vocabulary: the sqrt
  /// argument is the real nonnegative p.p, and all other nodes commute with
  /// conjugation.
  Expr conjugate() const {
    switch (kind()) {
      case Kind::Constant:
        return constant(std::conj(node_->value));
      case Kind::Momentum:
      case Kind::Helicity:
        return *this;
      default: {
        std::vector<Expr> kids;
        kids.reserve(node_->children.size());
        bool changed = false;
        for (const auto& ch : node_->children) {
          kids.push_back(ch.conjugate());
          changed = changed || kids.back().node_ != ch.node_;
        }
        if (!changed) return *this;
        return make(kind(), node_->value, node_->index, std::move(kids));
      }
    }
  }

  // -- calculus ---------------------------------------------------------------

  /// Exact symbolic derivative with respect to p_axis, axis in {1,2,3}.
  /// Repeated application is legal to any order.
  Expr differentiate(int axis) const {
    require_axis(axis);
    switch (kind()) {
      case Kind::Constant:
      case Kind::Helicity:
        return zero();
      case Kind::Momentum:
        return node_->index == axis ? one() : zero();
      case Kind::Sum: {
        std::vector<Expr> terms;
        terms.reserve(node_->children.size());
        for (const auto& ch : node_->children) terms.push_back(ch.differentiate(axis));
        return sum(std::move(terms));
      }
      case Kind::Product: {
        const auto& f = node_->children;
        std::vector<Expr> terms;
        terms.reserve(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          std::vector<Expr> factors;
          factors.reserve(f.size());
          for (std::size_t j = 0; j < f.size(); ++j)
            factors.push_back(i == j ? f[j].differentiate(axis) : f[j]);
          terms.push_back(product(std::move(factors)));
        }
        return sum(std::move(terms));
      }
      case Kind::Negate:
        return -node_->children.front().differentiate(axis);
      case Kind::IntPower: {
        const Expr& u = node_->children.front();
        const int n = node_->index;
        return product({constant(double(n)), u.pow_int(n - 1), u.differentiate(axis)});
      }
      case Kind::Reciprocal: {
        const Expr& u = node_->children.front();
        return -product({u.differentiate(axis), u.pow_int(2).reciprocal()});
      }
      case Kind::Sqrt:
        // d|p|/dp_k = p_k / |p|
        return momentum(axis) * reciprocal();
    }
    return zero();  // unreachable
  }

  // -- evaluation --------------------------------------------------------------

  std::complex<double> evaluate(const EvalContext& ctx) const {
    ctx.check();
    return eval_node(ctx);
  }

  // -- inspection ---------------------------------------------------------------

  Kind kind() const { return node_->kind; }

  bool is_zero_literal() const {
    return kind() == Kind::Constant && node_->value == Complex{};
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& ch : node_->children) n += ch.node_count();
    return n;
  }

  /// Compact debug rendering.
  std::string to_string() const {
    std::ostringstream os;
    print(os);
    return os.str();
  }

 private:
  struct Node {
    Kind kind;
    Complex value;               // Constant
    int index;                   // Momentum axis or IntPower exponent
    std::vector<Expr> children;  // ordered, evaluation order fixed
  };

  std::shared_ptr<const Node> node_;

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Expr make(Kind k, Complex v, int index, std::vector<Expr> children) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    n->index = index;
    n->children = std::move(children);
    return Expr(std::move(n));
  }

  static void require_axis(int axis) {
    if (axis < 1 || axis > 3)
      throw PreconditionError("momentum axis must be 1, 2 or 3");
  }

  Complex eval_node(const EvalContext& ctx) const {
    switch (kind()) {
      case Kind::Constant:
        return node_->value;
      case Kind::Momentum:
        return Complex(ctx.p[node_->index - 1], 0.0);
      case Kind::Helicity:
        return Complex(ctx.lambda, 0.0);
      case Kind::Sum: {
        Complex s{};
        for (const auto& ch : node_->children) s += ch.eval_node(ctx);
        return s;
      }
      case Kind::Product: {
        Complex s{1.0, 0.0};
        for (const auto& ch : node_->children) s *= ch.eval_node(ctx);
        return s;
      }
      case Kind::Negate:
        return -node_->children.front().eval_node(ctx);
      case Kind::IntPower: {
        Complex v = node_->children.front().eval_node(ctx);
        Complex r{1.0, 0.0};
        for (int k = 0; k < node_->index; ++k) r *= v;
        return r;
      }
      case Kind::Reciprocal: {
        Complex v = node_->children.front().eval_node(ctx);
        if (v == Complex{})
          throw GuardedSingularityError("reciprocal of zero inside the guarded domain");
        return Complex(1.0, 0.0) / v;
      }
      case Kind::Sqrt: {
        Complex v = node_->children.front().eval_node(ctx);
        return std::sqrt(v);
      }
    }
    return {};  // unreachable
  }

  void print(std::ostringstream& os) const {
    switch (kind()) {
      case Kind::Constant: {
        const Complex v = node_->value;
        if (v.imag() == 0.0)
          os << v.real();
        else
          os << "(" << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i)";
        return;
      }
      case Kind::Momentum:
        os << "p" << node_->index;
        return;
      case Kind::Helicity:
        os << "lambda";
        return;
      case Kind::Sum: {
        os << "(";
        bool first = true;
        for (const auto& ch : node_->children) {
          if (!first) os << " + ";
          first = false;
          ch.print(os);
        }
        os << ")";
        return;
      }
      case Kind::Product: {
        bool first = true;
        for (const auto& ch : node_->children) {
          if (!first) os << "*";
          first = false;
          ch.print(os);
        }
        return;
      }
      case Kind::Negate:
        os << "-";
        node_->children.front().print(os);
        return;
      case Kind::IntPower:
        node_->children.front().print(os);
        os << "^" << node_->index;
        return;
      case Kind::Reciprocal:
        os << "1/(";
        node_->children.front().print(os);
        os << ")";
        return;
      case Kind::Sqrt:
        os << "|p|";
        return;
    }
  }
};

}  // namespace helipos
