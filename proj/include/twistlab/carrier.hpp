#pragma once

// Carrier data for a Jordanian twist on a deformed Borel subspace: the
// constituent roots of lambda0_perp and the validator for the conditions
// under which E_B = E + B_i B^i e^{-sigma} is primitive.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/check_report.hpp"
#include "twistlab/expr.hpp"

namespace twistlab {

struct ConstituentSet {
  std::vector<Root> pi_prime;
  std::vector<Root> pi_double_prime;

  std::size_t size() const { return pi_prime.size(); }
};

/// All unordered decompositions lambda' + lambda'' = lambda0_perp with
/// lambda' + lambda0_perp and lambda'' + lambda0_perp outside the system.
/// The lexicographically smaller root of each pair goes to pi_prime; a
/// coincident pair lambda' = lambda'' appears once.
inline ConstituentSet constituent_roots(const RootSystem& rs, const Root& lambda0_perp) {
  ConstituentSet out;
  for (const Root& a : rs.roots) {
    const Root b = lambda0_perp - a;
    if (b < a || !rs.contains(b)) continue;
    if (rs.contains(a + lambda0_perp) || rs.contains(b + lambda0_perp)) continue;
    out.pi_prime.push_back(a);
    out.pi_double_prime.push_back(b);
  }
  return out;
}

/// Reorients each pair so that lambda' + lambda0 lies in pi'' where possible.
inline ConstituentSet orient_by_shift(const RootSystem& rs, ConstituentSet set, const Root& lambda0) {
  for (std::size_t k = 0; k < set.size(); ++k) {
    auto in_second = [&](const Root& r) {
      return std::find(set.pi_double_prime.begin(), set.pi_double_prime.end(), r) !=
                 set.pi_double_prime.end() ||
             std::find(set.pi_prime.begin(), set.pi_prime.end(), r) != set.pi_prime.end();
    };
    const bool forward = rs.contains(set.pi_prime[k] + lambda0) && in_second(set.pi_prime[k] + lambda0);
    const bool backward =
        rs.contains(set.pi_double_prime[k] + lambda0) && in_second(set.pi_double_prime[k] + lambda0);
    if (!forward && backward) std::swap(set.pi_prime[k], set.pi_double_prime[k]);
  }
  return set;
}

struct ExtensionPair {
  SignedGenerator left;   // L_{lambda'}
  SignedGenerator right;  // L_{lambda0_perp - lambda'}
};

/// Everything needed to build and validate the chain
/// Phi_BJ Phi_E... Phi_J on one algebra.
struct CarrierConfig {
  std::string algebra;
  std::string cartan;               // H of the second Jordanian factor
  SignedGenerator borel;            // E = L_{lambda0}, normalized so [H, E] = E
  Root lambda0;
  Root lambda0_perp;
  std::string perp_cartan;          // H_{lambda0_perp}
  SignedGenerator perp_root_vector; // L_{lambda0_perp}
  /// Extension factors in left-to-right chain order; the last one is
  /// applied first and carries lambda'.
  std::vector<ExtensionPair> extensions;
  /// (B_i, B^i) of E_B = E + xi B_i B^i.
  std::pair<SignedGenerator, SignedGenerator> b_factors;
  bool deformed = true;  // xi = 1 (false: xi = 0, E_B = E)
};

/// Carrier data for "so5" (coincident-root case) and "sl4" (generic case).
inline CarrierConfig carrier_config(std::string_view algebra) {
  if (algebra == "so5") {
    CarrierConfig c;
    c.algebra = "so5";
    c.cartan = "H_{1-2}";
    c.borel = {"E_{1-2}", 1};
    c.lambda0 = Root{1, -1};
    c.lambda0_perp = Root{1, 1};
    c.perp_cartan = "H_{1+2}";
    c.perp_root_vector = {"E_{1+2}", 1};
    c.extensions = {{{"E_2", -1}, {"E_1", 1}}};
    c.b_factors = {{"E_1", 1}, {"E_1", 1}};
    return c;
  }
  if (algebra == "sl4") {
    CarrierConfig c;
    c.algebra = "sl4";
    c.cartan = "H_{23}";
    // sign fixed by C_{lambda' lambda0}^{lambda0_perp - tilde lambda'} = -1
    c.borel = {"E_{23}", -1};
    c.lambda0 = Root{0, 1, -1, 0};
    c.lambda0_perp = Root{1, 0, 0, -1};
    c.perp_cartan = "H_{14}";
    c.perp_root_vector = {"E_{14}", 1};
    c.extensions = {{{"E_{34}", -1}, {"E_{13}", 1}}, {{"E_{12}", 1}, {"E_{24}", 1}}};
    c.b_factors = {{"E_{13}", 1}, {"E_{24}", 1}};
    return c;
  }
  throw LookupError("no carrier configuration for algebra '" + std::string(algebra) + "'");
}

enum class CarrierCase { kInvalid, kGeneric, kCoincident };

inline const char* to_string(CarrierCase c) {
  switch (c) {
    case CarrierCase::kGeneric: return "generic";
    case CarrierCase::kCoincident: return "coincident";
    case CarrierCase::kInvalid: return "invalid";
  }
  return "?";
}

struct CarrierValidation {
  std::vector<CheckReport> lines;
  CarrierCase kind = CarrierCase::kInvalid;
  std::optional<Root> lambda_prime;
  std::optional<Root> lambda_tilde;

  bool passed() const {
    return std::all_of(lines.begin(), lines.end(), [](const CheckReport& r) { return r.as_expected(); });
  }
  const CheckReport* line(std::string_view name) const {
    for (const auto& l : lines)
      if (l.name == name) return &l;
    return nullptr;
  }
};

/// sigma_0^perp = ln(1 + h L_{lambda0_perp}); h is 1 unless `with_param`.
inline Expr perp_sigma(const CarrierConfig& c, bool with_param = false) {
  const Expr e = c.perp_root_vector.expr();
  return sigma(with_param ? Expr::param() * e : e);
}

/// Checks the carrier conditions one line at a time; failures are report
/// entries, never exceptions (unknown generator names excepted).
inline CarrierValidation validate_carrier(const AlgebraRep& rep, const CarrierConfig& c) {
  CarrierValidation v;
  const RootSystem& rs = rep.root_system;
  auto add = [&v](CheckReport r) { v.lines.push_back(std::move(r)); };
  auto root_of = [&](const SignedGenerator& g) { return rep.root(g.name); };

  {
    const FieldMatrix e = rep.matrix(c.borel);
    add(residual_check("borel normalization [H,E]=E", "[H,E]=E", commutator(rep.gen(c.cartan), e) - e));
    const FieldMatrix ep = rep.matrix(c.perp_root_vector);
    add(residual_check("perp normalization [H_perp,E_perp]=E_perp", "[H,E]=E",
                       commutator(rep.gen(c.perp_cartan), ep) - ep));
  }
  add(boolean_check("root data", "E = L_lambda0, L_lambda0_perp",
                    root_of(c.borel) == c.lambda0 && root_of(c.perp_root_vector) == c.lambda0_perp,
                    "lambda0 = " + c.lambda0.to_string() + ", lambda0_perp = " + c.lambda0_perp.to_string()));

  {
    // beta_i + beta^i = 1, with the eigenvector property checked in the rep
    const Root rb = root_of(c.b_factors.first);
    const Root ru = root_of(c.b_factors.second);
    const Rational beta_lower = rep.pairing(c.cartan, rb);
    const Rational beta_upper = rep.pairing(c.cartan, ru);
    const FieldMatrix h = rep.gen(c.cartan);
    const FieldMatrix bl = rep.matrix(c.b_factors.first);
    const FieldMatrix bu = rep.matrix(c.b_factors.second);
    const bool eigen = commutator(h, bl) == bl * FieldElem(beta_lower) &&
                       commutator(h, bu) == bu * FieldElem(beta_upper);
    CheckReport r = boolean_check("eigenvalue sum beta_i+beta^i=1", "beta_i + beta^i = 1",
                                  eigen && beta_lower + beta_upper == 1,
                                  "beta_i = " + beta_lower.get_str() + ", beta^i = " + beta_upper.get_str());
    r.residual = Rational(beta_lower + beta_upper - 1).get_str();
    if (!eigen) r.note += "; B factors are not ad(H) eigenvectors";
    add(std::move(r));
  }

  std::vector<Root> primes, seconds;
  for (const auto& p : c.extensions) {
    primes.push_back(root_of(p.left));
    seconds.push_back(root_of(p.right));
  }
  auto in = [](const std::vector<Root>& set, const Root& r) {
    return std::find(set.begin(), set.end(), r) != set.end();
  };

  {
    bool ok = !primes.empty();
    bool outside = true;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      ok = ok && primes[k] + seconds[k] == c.lambda0_perp;
      outside = outside && !rs.contains(primes[k] + c.lambda0_perp) && !rs.contains(seconds[k] + c.lambda0_perp);
    }
    add(boolean_check("constituent roots lambda'+lambda''=lambda0_perp", "lambda' + lambda'' = lambda0_perp", ok));
    add(boolean_check("lambda'+lambda0_perp not a root", "lambda'+lambda0_perp, lambda''+lambda0_perp not in the root system",
                      outside));
  }

  if (!primes.empty()) {
    const Root lp = primes.back();
    v.lambda_prime = lp;
    const Root tilde = c.lambda0_perp - lp - c.lambda0;
    std::string note;
    if (lp + c.lambda0 == c.lambda0_perp - lp) {
      v.kind = CarrierCase::kCoincident;
      v.lambda_tilde = lp;
      note = "coincident case lambda'+lambda0 = lambda0_perp-lambda' (lambda' = " + lp.to_string() + ")";
    } else if (in(primes, tilde)) {
      v.kind = CarrierCase::kGeneric;
      v.lambda_tilde = tilde;
      note = "generic case, tilde lambda' = " + tilde.to_string();
    } else {
      note = "tilde lambda' = " + tilde.to_string() + " is not an extension root";
    }
    add(boolean_check("root condition", "tilde lambda' = -lambda' - lambda0 + lambda0_perp",
                      v.kind != CarrierCase::kInvalid, note));

    bool cond_i = true;
    for (const Root& r : primes)
      cond_i = cond_i && (!rs.contains(r + c.lambda0) || in(seconds, r + c.lambda0));
    cond_i = cond_i && in(seconds, lp + c.lambda0);
    add(boolean_check("lambda'+lambda0 in pi''", "lambda' + lambda0 in pi''", cond_i));

    // short lambda0-series for every root of the carrier
    std::vector<Root> relevant = {lp, c.lambda0_perp - lp};
    if (v.lambda_tilde) {
      relevant.push_back(*v.lambda_tilde);
      relevant.push_back(c.lambda0_perp - *v.lambda_tilde);
    }
    std::size_t longest = 0;
    for (const Root& r : relevant) longest = std::max(longest, rs.series(r, c.lambda0).size());
    std::string series_note = "longest lambda0-series length " + std::to_string(longest);
    if (v.kind == CarrierCase::kCoincident) {
      const auto s = rs.series(c.lambda0_perp, -lp);
      series_note += "; lambda'-series of lambda0_perp has length " + std::to_string(s.size()) +
                     " (long series permitted in the coincident case)";
    }
    add(boolean_check("short lambda0-series", "all lambda0-series are short", longest <= 2,
                      series_note));

    if (v.lambda_tilde) {
      // B factors reduce to L_{lambda0_perp - tilde lambda'} and L_{lambda0_perp - lambda'}
      const Root want_lower = c.lambda0_perp - *v.lambda_tilde;
      const Root want_upper = c.lambda0_perp - lp;
      const Root got_lower = root_of(c.b_factors.first);
      const Root got_upper = root_of(c.b_factors.second);
      const bool ok = (got_lower == want_lower && got_upper == want_upper) ||
                      (got_lower == want_upper && got_upper == want_lower);
      add(boolean_check("b-factor realization", "B factors from L_{lambda0_perp - tilde lambda'}, L_{lambda0_perp - lambda'}",
                        ok));
    }
  } else {
    add(boolean_check("root condition", "tilde lambda' = -lambda' - lambda0 + lambda0_perp", false,
                      "no extension pairs"));
  }

  add(boolean_check("H orthogonal to lambda0_perp", "H* orthogonal to lambda0_perp",
                    sgn(rep.pairing(c.cartan, c.lambda0_perp)) == 0,
                    "<H, lambda0_perp> = " + rep.pairing(c.cartan, c.lambda0_perp).get_str()));

  {
    // extension tensor C must not be invariant under {H, E} (no matreshka effect)
    const Morphism<FieldElem> rho = rep.rho();
    const std::size_t d = rep.dim;
    Evaluator<FieldElem> ev(rho);
    const Expr damp = neg_half_exp(perp_sigma(c));
    FieldMatrix tensor(d * d, d * d);
    for (const auto& p : c.extensions) tensor += kron(ev(p.left.expr()), ev(p.right.expr() * damp));
    const FieldMatrix id = FieldMatrix::identity(d);
    auto prim = [&](const FieldMatrix& x) { return kron(x, id) + kron(id, x); };
    const bool invariant = commutator(tensor, prim(rep.gen(c.cartan))).is_zero() &&
                           commutator(tensor, prim(rep.matrix(c.borel))).is_zero();
    CheckReport r = boolean_check("extension tensor not {H,E}-invariant", "[C, Delta(H)] = [C, Delta(E)] = 0 would give case I",
                                  !invariant,
                                  invariant ? "matreshka effect: C is invariant, E stays primitive"
                                            : "C is not invariant");
    if (!c.deformed) r.expectation = Expectation::kInformational;
    add(std::move(r));
  }
  return v;
}

}  // namespace twistlab
