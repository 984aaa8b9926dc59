#pragma once

// Exact defining representations of sl(4) and so(5) with their root data.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistlab/error.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/root.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

/// A generator name with a scalar normalization, e.g. -E_{34}.
struct SignedGenerator {
  std::string name;
  FieldElem scale = 1;

  Expr expr() const { return scale * gen(name); }
  std::string to_string() const {
    if (scale.is_one()) return name;
    if (scale == FieldElem(-1)) return "-" + name;
    return "(" + scale.to_string() + ")" + name;
  }
};

/// How the so(5) negative-root generators are normalized.
enum class NegativeRootConvention {
  /// E_{-a} = E_a^dagger, so [E_a, E_{-a}] = h_a with h_a the Cartan element
  /// identified with a by the Euclidean form. The long coproduct formulas of
  /// the twisted so(5) hold exactly in this normalization.
  kConjugateTranspose,
  /// E_{-a} proportional to E_a^dagger with [E_a, E_{-a}] = H_a, where
  /// H_a is the Cartan element with a(H_a) = 1 along a.
  kCartanDual,
};

inline const char* to_string(NegativeRootConvention c) {
  return c == NegativeRootConvention::kConjugateTranspose ? "conjugate-transpose" : "cartan-dual";
}

/// Named Lie algebra with root data and exact defining-representation matrices.
struct AlgebraRep {
  std::string name;
  RootSystem root_system;
  std::size_t dim = 0;
  /// Every named generator, including dependent Cartan aliases.
  std::map<std::string, FieldMatrix, std::less<>> gens;
  /// Linearly independent generators spanning the algebra, in a fixed order.
  std::vector<std::string> basis;
  std::map<std::string, Root, std::less<>> root_of;
  /// Cartan name -> coordinates c so that [H, L_a] = <c, a> L_a.
  std::map<std::string, Root, std::less<>> cartan_coords;
  std::string conventions;

  const FieldMatrix& gen(std::string_view g) const {
    auto it = gens.find(g);
    if (it == gens.end())
      throw LookupError("algebra " + name + " has no generator '" + std::string(g) + "'");
    return it->second;
  }
  bool has(std::string_view g) const { return gens.find(g) != gens.end(); }
  bool is_cartan(std::string_view g) const { return cartan_coords.find(g) != cartan_coords.end(); }

  std::optional<std::string> root_vector(const Root& r) const {
    for (const auto& [g, root] : root_of)
      if (root == r) return g;
    return std::nullopt;
  }
  const Root& root(std::string_view g) const {
    auto it = root_of.find(g);
    if (it == root_of.end())
      throw LookupError("generator '" + std::string(g) + "' of " + name + " is not a root vector");
    return it->second;
  }

  /// Eigenvalue of ad(H) on the root space of r.
  Rational pairing(std::string_view cartan, const Root& r) const {
    auto it = cartan_coords.find(cartan);
    if (it == cartan_coords.end())
      throw LookupError("'" + std::string(cartan) + "' is not a Cartan generator of " + name);
    return dot(it->second, r);
  }

  Morphism<FieldElem> rho() const {
    Morphism<FieldElem> m("rho", dim);
    for (const auto& [n, g] : gens) m.set(n, g);
    return m;
  }

  FieldMatrix matrix(const SignedGenerator& s) const { return gen(s.name) * s.scale; }

  /// Checks every [H, L_a] = <H, a> L_a; returns a description of the first
  /// violation.
  std::optional<std::string> first_violation() const {
    for (const auto& [h, coords] : cartan_coords)
      for (const auto& [g, r] : root_of) {
        const FieldMatrix lhs = commutator(gen(h), gen(g));
        if (!(lhs == gen(g) * FieldElem(pairing(h, r))))
          return "[" + h + ", " + g + "] != " + pairing(h, r).get_str() + " " + g;
      }
    return std::nullopt;
  }
};

namespace detail {

inline FieldMatrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  FieldMatrix m(n, n);
  m(i - 1, j - 1) = 1;
  return m;
}

/// Okubo antisymmetric matrix (M_ij)_ab = sign (delta_ia delta_jb - delta_ib delta_ja).
inline FieldMatrix okubo(std::size_t i, std::size_t j, int sign) {
  FieldMatrix m(5, 5);
  m(i - 1, j - 1) = sign;
  m(j - 1, i - 1) = -sign;
  return m;
}

}  // namespace detail

/// sl(4) in its 4-dimensional defining representation.
///
/// Root vectors are the matrix units E_{ij} (root e_i - e_j). Cartans are
/// H_{ij} = (E_ii - E_jj)/2 for ij in {12, 14, 23}, so [H_{14}, E_{14}] = E_{14}
/// and [H_{23}, E_{23}] = E_{23}.
inline AlgebraRep build_sl4() {
  AlgebraRep rep;
  rep.name = "sl4";
  rep.root_system = root_system_A(3);
  rep.dim = 4;
  const Rational half(1, 2);
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 4}, std::pair{2, 3}}) {
    const std::string h = "H_{" + std::to_string(i) + std::to_string(j) + "}";
    rep.gens[h] = (detail::matrix_unit(4, i, i) - detail::matrix_unit(4, j, j)) * FieldElem(half);
    std::vector<int> twice(4, 0);
    twice[i - 1] = 1;
    twice[j - 1] = -1;
    rep.cartan_coords[h] = Root::from_twice(twice);
    rep.basis.push_back(h);
  }
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j) {
      if (i == j) continue;
      const std::string g = "E_{" + std::to_string(i) + std::to_string(j) + "}";
      rep.gens[g] = detail::matrix_unit(4, i, j);
      rep.root_of[g] = Root::unit(4, i) - Root::unit(4, j);
      rep.basis.push_back(g);
    }
  rep.conventions = "matrix units E_ij; H_ij = (E_ii - E_jj)/2";
  if (auto v = rep.first_violation()) throw ConstructionError("sl4: " + *v);
  return rep;
}

/// so(5) in its 5-dimensional defining representation by Okubo matrices.
///
/// The six carrier generators are the printed combinations
///   H_{1+2} = -i/2 (M12 + M34),        H_{1-2} = -i/2 (M12 - M34),
///   E_{1+2} = 1/2 (-M24 + iM23 + iM14 + M13),
///   E_{1-2} = 1/2 (-M24 - iM23 + iM14 - M13),
///   E_1 = (M25 - iM15)/sqrt2,          E_2 = (M45 - iM35)/sqrt2,
/// with H_1 = -i/2 M12 and H_2 = -i/2 M34. If the normalization [H, E] = E
/// fails under the Okubo sign +1 the global sign of all M_ij is flipped.
inline AlgebraRep build_so5(NegativeRootConvention convention = NegativeRootConvention::kConjugateTranspose) {
  const FieldElem i = FieldElem::i();
  const FieldElem half(Rational(1, 2));
  const FieldElem inv_sqrt2(0, 0, Rational(1, 2), 0);

  for (int sign : {1, -1}) {
    auto m = [sign](std::size_t a, std::size_t b) { return detail::okubo(a, b, sign); };
    AlgebraRep rep;
    rep.name = "so5";
    rep.root_system = root_system_B2();
    rep.dim = 5;
    const FieldElem minus_i_half = -i * half;
    rep.gens["H_{1+2}"] = (m(1, 2) + m(3, 4)) * minus_i_half;
    rep.gens["H_{1-2}"] = (m(1, 2) - m(3, 4)) * minus_i_half;
    rep.gens["H_1"] = m(1, 2) * minus_i_half;
    rep.gens["H_2"] = m(3, 4) * minus_i_half;
    rep.gens["E_{1+2}"] = (-m(2, 4) + m(2, 3) * i + m(1, 4) * i + m(1, 3)) * half;
    rep.gens["E_{1-2}"] = (-m(2, 4) - m(2, 3) * i + m(1, 4) * i - m(1, 3)) * half;
    rep.gens["E_1"] = (m(2, 5) - m(1, 5) * i) * inv_sqrt2;
    rep.gens["E_2"] = -((-m(4, 5) + m(3, 5) * i) * inv_sqrt2);

    rep.cartan_coords["H_{1+2}"] = Root::from_twice({1, 1});
    rep.cartan_coords["H_{1-2}"] = Root::from_twice({1, -1});
    rep.cartan_coords["H_1"] = Root::from_twice({1, 0});
    rep.cartan_coords["H_2"] = Root::from_twice({0, 1});
    rep.root_of["E_{1+2}"] = Root{1, 1};
    rep.root_of["E_{1-2}"] = Root{1, -1};
    rep.root_of["E_1"] = Root{1, 0};
    rep.root_of["E_2"] = Root{0, 1};

    const FieldMatrix& hp = rep.gens["H_{1+2}"];
    const FieldMatrix& hm = rep.gens["H_{1-2}"];
    if (!(commutator(hp, rep.gens["E_{1+2}"]) == rep.gens["E_{1+2}"]) ||
        !(commutator(hm, rep.gens["E_{1-2}"]) == rep.gens["E_{1-2}"]))
      continue;

    // negative roots from the adjoint of the positive ones
    const std::vector<std::pair<std::string, std::string>> negatives = {
        {"E_1", "E_{-1}"}, {"E_2", "E_{-2}"}, {"E_{1-2}", "E_{2-1}"}, {"E_{1+2}", "E_{-1-2}"}};
    for (const auto& [pos, neg] : negatives) {
      const Root alpha = rep.root_of[pos];
      FieldMatrix candidate = rep.gens[pos].adjoint();
      if (convention == NegativeRootConvention::kCartanDual) {
        // H_a has coordinates a / |a|^2 in the e-basis; h_k = 2 H_k
        const Rational norm = dot(alpha, alpha);
        const FieldMatrix h_alpha = (rep.gens["H_1"] * FieldElem(alpha.coord(0)) +
                                     rep.gens["H_2"] * FieldElem(alpha.coord(1))) *
                                    FieldElem(Rational(2) / norm);
        const auto c = solve_in_span({commutator(rep.gens[pos], candidate)}, h_alpha);
        if (!c) throw ConstructionError("so5: [" + pos + ", " + pos + "^dagger] not proportional to H_alpha");
        candidate = candidate * (*c)[0];
      }
      rep.gens[neg] = std::move(candidate);
      rep.root_of[neg] = -alpha;
    }
    rep.basis = {"H_{1+2}", "H_{1-2}", "E_{1+2}", "E_{1-2}", "E_1", "E_2",
                 "E_{-1}", "E_{-2}", "E_{2-1}", "E_{-1-2}"};
    rep.conventions = std::string("Okubo sign ") + (sign > 0 ? "+1" : "-1") +
                      "; negative roots: " + to_string(convention);
    if (auto v = rep.first_violation()) throw ConstructionError("so5: " + *v);
    for (const auto& [g, mat] : rep.gens)
      if (!(mat.transpose() == -mat)) throw ConstructionError("so5: " + g + " is not antisymmetric");
    return rep;
  }
  throw ConstructionError("so5: [H, E] = E fails under both Okubo sign conventions");
}

inline AlgebraRep build_algebra(std::string_view name) {
  if (name == "sl4") return build_sl4();
  if (name == "so5") return build_so5();
  throw LookupError("unknown algebra '" + std::string(name) + "' (expected sl4 or so5)");
}

/// Overrides of the root-vector normalization: root -> signed generator.
using RootNormalization = std::map<Root, SignedGenerator>;

/// Coefficient of L_nu in [L_lambda, L_mu], extracted by an exact linear solve
/// over the representation's basis. Root vectors default to the rep's
/// generators; `norm` rescales individual ones.
inline FieldElem structure_constant(const AlgebraRep& rep, const Root& lambda, const Root& mu,
                                    const Root& nu, const RootNormalization& norm = {}) {
  auto vec = [&](const Root& r) -> SignedGenerator {
    if (auto it = norm.find(r); it != norm.end()) return it->second;
    if (auto g = rep.root_vector(r)) return {*g, 1};
    throw LookupError(rep.name + " has no root vector for " + r.to_string());
  };
  const SignedGenerator a = vec(lambda);
  const SignedGenerator b = vec(mu);
  const FieldMatrix bracket = commutator(rep.matrix(a), rep.matrix(b));
  std::vector<FieldMatrix> basis;
  for (const auto& g : rep.basis) basis.push_back(rep.gen(g));
  const auto coeffs = solve_in_span(basis, bracket);
  if (!coeffs)
    throw LookupError("[" + a.to_string() + ", " + b.to_string() + "] is not in the span of the " +
                      rep.name + " generator table");
  if (!rep.root_system.contains(nu)) return 0;
  const SignedGenerator c = vec(nu);
  for (std::size_t k = 0; k < rep.basis.size(); ++k)
    if (rep.basis[k] == c.name) return (*coeffs)[k] / c.scale;
  return 0;
}

}  // namespace twistlab
