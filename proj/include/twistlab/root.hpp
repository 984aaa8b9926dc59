#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "twistlab/error.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

/// Root in the orthogonal e-basis; coordinates are integers or half-integers
/// and are stored doubled.
class Root {
 public:
  Root() = default;
  Root(std::initializer_list<int> coords) {
    for (int c : coords) twice_.push_back(2 * c);
  }
  static Root from_twice(std::vector<int> twice) {
    Root r;
    r.twice_ = std::move(twice);
    return r;
  }
  /// e_i (1-based) in an ambient space of dimension n.
  static Root unit(std::size_t n, std::size_t i) {
    std::vector<int> t(n, 0);
    t.at(i - 1) = 2;
    return from_twice(std::move(t));
  }

  std::size_t ambient_dim() const { return twice_.size(); }
  Rational coord(std::size_t k) const { return ratio(twice_.at(k), 2); }
  const std::vector<int>& twice() const { return twice_; }
  bool is_zero() const {
    return std::all_of(twice_.begin(), twice_.end(), [](int c) { return c == 0; });
  }

  friend Root operator+(const Root& a, const Root& b) {
    a.require_same(b);
    Root r = a;
    for (std::size_t k = 0; k < r.twice_.size(); ++k) r.twice_[k] += b.twice_[k];
    return r;
  }
  friend Root operator-(const Root& a, const Root& b) { return a + (-b); }
  Root operator-() const {
    Root r = *this;
    for (auto& c : r.twice_) c = -c;
    return r;
  }
  friend Root operator*(int k, const Root& a) {
    Root r = a;
    for (auto& c : r.twice_) c *= k;
    return r;
  }

  friend bool operator==(const Root&, const Root&) = default;
  /// Lexicographic on coordinates.
  friend auto operator<=>(const Root& a, const Root& b) { return a.twice_ <=> b.twice_; }

  /// Euclidean inner product.
  friend Rational dot(const Root& a, const Root& b) {
    a.require_same(b);
    long s = 0;
    for (std::size_t k = 0; k < a.twice_.size(); ++k)
      s += static_cast<long>(a.twice_[k]) * b.twice_[k];
    return ratio(s, 4);
  }

  /// e.g. "e1-e2", "e1+e2", "1/2e1-e3", "0".
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < twice_.size(); ++k) {
      if (twice_[k] == 0) continue;
      const Rational c = ratio(twice_[k], 2);
      const Rational mag = ::abs(c);
      if (c < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      if (mag != 1) s += mag.get_str();
      s += "e" + std::to_string(k + 1);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void require_same(const Root& b) const {
    if (twice_.size() != b.twice_.size()) throw DomainError("root ambient dimensions differ");
  }

  std::vector<int> twice_;
};

struct RootSystem {
  std::string name;
  std::size_t rank = 0;
  std::vector<Root> roots;

  bool contains(const Root& r) const {
    return r.ambient_dim() == ambient_dim() && std::find(roots.begin(), roots.end(), r) != roots.end();
  }
  std::size_t ambient_dim() const { return roots.empty() ? 0 : roots.front().ambient_dim(); }

  /// Roots mu + k*step (k in Z) of the system; the step-series through mu.
  std::vector<Root> series(const Root& mu, const Root& step) const {
    std::vector<Root> out;
    if (step.is_zero()) return out;
    Root start = mu;
    while (contains(start - step)) start = start - step;
    for (Root r = start; contains(r); r = r + step) out.push_back(r);
    return out;
  }
};

/// A_n: roots e_i - e_j in R^{n+1}.
inline RootSystem root_system_A(std::size_t n) {
  RootSystem rs{"A" + std::to_string(n), n, {}};
  const std::size_t amb = n + 1;
  for (std::size_t i = 1; i <= amb; ++i)
    for (std::size_t j = 1; j <= amb; ++j)
      if (i != j) rs.roots.push_back(Root::unit(amb, i) - Root::unit(amb, j));
  std::sort(rs.roots.begin(), rs.roots.end());
  return rs;
}

/// B_2 = so(5): {+-e1, +-e2, +-e1 +- e2}.
inline RootSystem root_system_B2() {
  RootSystem rs{"B2", 2, {}};
  for (int a : {-1, 0, 1})
    for (int b : {-1, 0, 1})
      if (a != 0 || b != 0) rs.roots.push_back(Root{a, b});
  std::sort(rs.roots.begin(), rs.roots.end());
  return rs;
}

}  // namespace twistlab
