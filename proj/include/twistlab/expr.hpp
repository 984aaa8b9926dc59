#pragma once

// Expression trees over named Lie-algebra generators. An Expr is evaluated
// under a Morphism (generator name -> matrix); exp and log1p nodes go
// through the guarded nilpotent series of matrix.hpp.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twistlab/error.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

class Expr {
 public:
  enum class Kind { kGenerator, kScalar, kParam, kSum, kProduct, kScale, kExp, kLog1p };

  /// The zero expression.
  Expr() : Expr(scalar(FieldElem(0))) {}

  static Expr generator(std::string name) {
    auto n = std::make_shared<Node>(Kind::kGenerator);
    n->name = std::move(name);
    return Expr(std::move(n));
  }
  static Expr scalar(FieldElem value) {
    auto n = std::make_shared<Node>(Kind::kScalar);
    n->value = std::move(value);
    return Expr(std::move(n));
  }
  static Expr one() { return scalar(FieldElem(1)); }
  /// The deformation parameter h (specializes to 1 on the plain-field path).
  static Expr param() { return Expr(std::make_shared<Node>(Kind::kParam)); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const FieldElem& value() const { return node_->value; }
  const std::vector<Expr>& children() const { return node_->children; }
  const void* id() const { return node_.get(); }

  bool is_zero_literal() const { return kind() == Kind::kScalar && value().is_zero(); }
  bool is_one_literal() const { return kind() == Kind::kScalar && value().is_one(); }

  friend Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero_literal()) return b;
    if (b.is_zero_literal()) return a;
    return combine(Kind::kSum, a, b);
  }
  friend Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_one_literal()) return b;
    if (b.is_one_literal()) return a;
    if (a.kind() == Kind::kScalar) return a.value() * b;
    if (b.kind() == Kind::kScalar) return b.value() * a;
    return combine(Kind::kProduct, a, b);
  }
  friend Expr operator*(const FieldElem& c, const Expr& a) {
    if (c.is_one()) return a;
    if (c.is_zero()) return Expr();
    if (a.kind() == Kind::kScalar) return scalar(c * a.value());
    if (a.kind() == Kind::kScale) return (c * a.value()) * a.children()[0];
    auto n = std::make_shared<Node>(Kind::kScale);
    n->value = c;
    n->children = {a};
    return Expr(std::move(n));
  }
  friend Expr operator-(const Expr& a) { return FieldElem(-1) * a; }
  friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

  Expr exp() const {
    if (is_zero_literal()) return one();
    return unary(Kind::kExp, *this);
  }
  Expr log1p() const {
    if (is_zero_literal()) return Expr();
    return unary(Kind::kLog1p, *this);
  }

  void collect_generators(std::set<std::string>& out) const {
    if (kind() == Kind::kGenerator) out.insert(name());
    for (const auto& c : children()) c.collect_generators(out);
  }

  std::string to_string() const {
    switch (kind()) {
      case Kind::kGenerator:
        return name();
      case Kind::kScalar:
        return value().is_rational() ? value().to_string() : "(" + value().to_string() + ")";
      case Kind::kParam:
        return "h";
      case Kind::kSum: {
        std::string s = "(";
        for (std::size_t k = 0; k < children().size(); ++k) {
          if (k > 0) s += " + ";
          s += children()[k].to_string();
        }
        return s + ")";
      }
      case Kind::kProduct: {
        std::string s;
        for (std::size_t k = 0; k < children().size(); ++k) {
          if (k > 0) s += " ";
          s += children()[k].to_string();
        }
        return s;
      }
      case Kind::kScale: {
        const std::string c =
            value().is_rational() ? value().to_string() : "(" + value().to_string() + ")";
        return c + "*" + wrap(children()[0]);
      }
      case Kind::kExp:
        return "exp(" + children()[0].to_string() + ")";
      case Kind::kLog1p:
        return "log1p(" + children()[0].to_string() + ")";
    }
    return "?";
  }

 private:
  struct Node {
    explicit Node(Kind k) : kind(k) {}
    Kind kind;
    std::string name;
    FieldElem value;
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::string wrap(const Expr& e) {
    return e.kind() == Kind::kProduct ? "(" + e.to_string() + ")" : e.to_string();
  }

  static Expr unary(Kind k, const Expr& a) {
    auto n = std::make_shared<Node>(k);
    n->children = {a};
    return Expr(std::move(n));
  }

  // flattens nested nodes of the same associative kind
  static Expr combine(Kind k, const Expr& a, const Expr& b) {
    auto n = std::make_shared<Node>(k);
    for (const Expr* e : {&a, &b}) {
      if (e->kind() == k)
        n->children.insert(n->children.end(), e->children().begin(), e->children().end());
      else
        n->children.push_back(*e);
    }
    return Expr(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline Expr gen(std::string name) { return Expr::generator(std::move(name)); }
inline Expr exp(const Expr& x) { return x.exp(); }
inline Expr log1p(const Expr& x) { return x.log1p(); }
/// sigma(E) = ln(1 + E).
inline Expr sigma(const Expr& e) { return e.log1p(); }
/// e^{-x/2}.
inline Expr neg_half_exp(const Expr& x) { return (FieldElem(Rational(-1, 2)) * x).exp(); }
inline Expr power(const Expr& x, unsigned k) {
  Expr r = Expr::one();
  for (unsigned n = 0; n < k; ++n) r = r * x;
  return r;
}

/// Assignment generator name -> matrix of a fixed dimension.
template <Scalar S>
class Morphism {
 public:
  Morphism(std::string label, std::size_t dim) : label_(std::move(label)), dim_(dim) {}

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }

  void set(const std::string& name, Matrix<S> m) {
    if (m.rows() != dim_ || m.cols() != dim_)
      throw DomainError("morphism '" + label_ + "': image of " + name + " has shape " + m.shape());
    images_.insert_or_assign(name, std::move(m));
  }
  bool has(std::string_view name) const { return images_.find(name) != images_.end(); }
  const Matrix<S>& image(std::string_view name) const {
    auto it = images_.find(name);
    if (it == images_.end())
      throw LookupError("generator '" + std::string(name) + "' missing from morphism '" + label_ +
                        "'");
    return it->second;
  }
  const std::map<std::string, Matrix<S>, std::less<>>& images() const { return images_; }

 private:
  std::string label_;
  std::size_t dim_;
  std::map<std::string, Matrix<S>, std::less<>> images_;
};

/// Evaluates expressions under one morphism, memoizing shared subtrees.
template <Scalar S>
class Evaluator {
 public:
  explicit Evaluator(const Morphism<S>& m) : morphism_(m) {}

  const Morphism<S>& morphism() const { return morphism_; }

  Matrix<S> operator()(const Expr& e) { return eval(e); }

 private:
  Matrix<S> eval(const Expr& e) {
    if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
    Matrix<S> r = compute(e);
    cache_.emplace(e.id(), std::make_pair(e, r));
    return r;
  }

  Matrix<S> compute(const Expr& e) {
    const std::size_t d = morphism_.dim();
    switch (e.kind()) {
      case Expr::Kind::kGenerator:
        return morphism_.image(e.name());
      case Expr::Kind::kScalar:
        return Matrix<S>::identity(d) * S(e.value());
      case Expr::Kind::kParam:
        return Matrix<S>::identity(d) * ScalarTraits<S>::param();
      case Expr::Kind::kSum: {
        Matrix<S> r(d, d);
        for (const auto& c : e.children()) r += eval(c);
        return r;
      }
      case Expr::Kind::kProduct: {
        Matrix<S> r = eval(e.children()[0]);
        for (std::size_t k = 1; k < e.children().size(); ++k) r = r * eval(e.children()[k]);
        return r;
      }
      case Expr::Kind::kScale:
        return eval(e.children()[0]) * S(e.value());
      case Expr::Kind::kExp:
        return exp_nilpotent(eval(e.children()[0]),
                             e.children()[0].to_string() + " under " + morphism_.label());
      case Expr::Kind::kLog1p:
        return log1p_nilpotent(eval(e.children()[0]),
                               e.children()[0].to_string() + " under " + morphism_.label());
    }
    throw Error("unknown expression node");
  }

  const Morphism<S>& morphism_;
  // the Expr is kept alive so node addresses stay unique while cached
  std::unordered_map<const void*, std::pair<Expr, Matrix<S>>> cache_;
};

template <Scalar S>
Matrix<S> evaluate(const Expr& e, const Morphism<S>& m) {
  Evaluator<S> ev(m);
  return ev(e);
}

/// The morphism g -> m(g) (x) I + I (x) m(g): the primitive coproduct pushed
/// through m.
template <Scalar S>
Morphism<S> primitive_coproduct(const Morphism<S>& m) {
  Morphism<S> d("Delta(" + m.label() + ")", m.dim() * m.dim());
  const Matrix<S> id = Matrix<S>::identity(m.dim());
  for (const auto& [name, img] : m.images()) d.set(name, kron(img, id) + kron(id, img));
  return d;
}

/// The counit: every generator maps to the 1x1 zero matrix.
template <Scalar S>
Morphism<S> counit_of(const Morphism<S>& m) {
  Morphism<S> e("epsilon", 1);
  for (const auto& [name, img] : m.images()) e.set(name, Matrix<S>(1, 1));
  return e;
}

inline Morphism<PolyParam> promote(const Morphism<FieldElem>& m) {
  Morphism<PolyParam> r(m.label(), m.dim());
  for (const auto& [name, img] : m.images()) r.set(name, promote(img));
  return r;
}

}  // namespace twistlab
