#pragma once

// The so(M) Yangian R-matrix R(u) = u + P - u/(u - 1 + M/2) K, its twist
// F21 R(u) F^{-1}, the spin-chain Hamiltonian density, and transfer
// matrices t(u) = tr_0 R_01(u) ... R_0n(u) on short chains.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/check_report.hpp"
#include "twistlab/error.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/twist.hpp"
#include "twistlab/verify.hpp"

namespace twistlab {

namespace detail {

/// u / (u - 1 + M/2), the coefficient of -K.
inline Rational k_coefficient(std::size_t m, const Rational& u) {
  const Rational pole_shift = u - 1 + ratio(static_cast<long>(m), 2);
  if (sgn(pole_shift) == 0)
    throw DomainError("spectral parameter u = " + u.get_str() + " is the pole 1 - M/2 of R(u)");
  Rational c = u / pole_shift;
  c.canonicalize();
  return c;
}

}  // namespace detail

/// u I + P - u/(u - 1 + M/2) K on C^M (x) C^M.
inline FieldMatrix yangian_r(std::size_t m, const Rational& u) {
  if (m < 2) throw DomainError("yangian_r: M must be at least 2");
  const Rational c = detail::k_coefficient(m, u);
  return FieldMatrix::identity(m * m) * FieldElem(u) + build_P(m) - build_K(m) * FieldElem(c);
}

/// R(u), untwisted or dressed by an evaluated twist F as F21 R(u) F^{-1}.
class SpectralRMatrix {
 public:
  explicit SpectralRMatrix(std::size_t m) : m_(m), p_(build_P(m)), k_(build_K(m)) {
    if (m < 2) throw DomainError("SpectralRMatrix: M must be at least 2");
  }

  SpectralRMatrix(std::size_t m, const EvaluatedTwist<FieldElem>& f, std::string chain_name)
      : SpectralRMatrix(m) {
    if (f.twist.rows() != m * m)
      throw DomainError("twist of shape " + f.twist.shape() + " does not act on C^" + std::to_string(m) +
                        " (x) C^" + std::to_string(m));
    const FieldMatrix f21 = p_ * f.twist * p_;
    twisted_ = Dressing{f21 * f.inverse, f21 * k_ * f.inverse};
    name_ = std::move(chain_name);
  }

  std::size_t site_dim() const { return m_; }
  bool twisted() const { return twisted_.has_value(); }
  /// "untwisted" or the chain name.
  const std::string& name() const { return name_; }

  FieldMatrix operator()(const Rational& u) const {
    const FieldElem c(detail::k_coefficient(m_, u));
    if (!twisted_) return FieldMatrix::identity(m_ * m_) * FieldElem(u) + p_ - k_ * c;
    return twisted_->f21_finv * FieldElem(u) + p_ - twisted_->f21_k_finv * c;
  }

 private:
  struct Dressing {
    FieldMatrix f21_finv;
    FieldMatrix f21_k_finv;
  };

  std::size_t m_;
  FieldMatrix p_;
  FieldMatrix k_;
  std::optional<Dressing> twisted_;
  std::string name_ = "untwisted";
};

inline SpectralRMatrix twisted_yangian(const TwistChain& chain, const AlgebraRep& rep) {
  return SpectralRMatrix(rep.dim, evaluate_twist(chain, rep), chain.name);
}

inline FieldMatrix twisted_yangian_r(const TwistChain& chain, const AlgebraRep& rep, const Rational& u) {
  return twisted_yangian(chain, rep)(u);
}

/// P F21 F^{-1} + 1/(1 - M/2) F K F^{-1}.
inline FieldMatrix hamiltonian_density(const EvaluatedTwist<FieldElem>& f, std::size_t m) {
  if (m == 2) throw DomainError("hamiltonian_density: 1/(1 - M/2) has a pole at M = 2");
  const FieldMatrix p = build_P(m);
  const FieldMatrix k = build_K(m);
  Rational c = Rational(1) / (Rational(1) - ratio(static_cast<long>(m), 2));
  c.canonicalize();
  return p * (p * f.twist * p) * f.inverse + f.twist * k * f.inverse * FieldElem(c);
}

inline FieldMatrix hamiltonian_density(const TwistChain& chain, const AlgebraRep& rep) {
  return hamiltonian_density(evaluate_twist(chain, rep), rep.dim);
}

/// Untwisted density P + 1/(1 - M/2) K.
inline FieldMatrix hamiltonian_density(std::size_t m) {
  return hamiltonian_density(EvaluatedTwist<FieldElem>{FieldMatrix::identity(m * m), FieldMatrix::identity(m * m)},
                             m);
}

namespace detail {

/// Block (a, b) of an operator on C^M (x) C^M with respect to the first factor.
inline FieldMatrix block(const FieldMatrix& r, std::size_t m, std::size_t a, std::size_t b) {
  FieldMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = r(a * m + i, b * m + j);
  return out;
}

}  // namespace detail

/// tr_0 R_01(u) ... R_0n(u) as sum over a_0..a_{n-1} of
/// R_{a0 a1} (x) R_{a1 a2} (x) ... (x) R_{a_{n-1} a0}, where R_ab are the
/// blocks of R(u) along the auxiliary factor. `max_workspace` bounds M^(n+1).
inline FieldMatrix transfer_matrix(const SpectralRMatrix& r, const Rational& u, std::size_t n_sites,
                                   std::size_t max_workspace = 625) {
  const std::size_t m = r.site_dim();
  if (n_sites < 1) throw DomainError("transfer_matrix: at least one site required");
  std::size_t workspace = m;
  for (std::size_t k = 0; k < n_sites; ++k) {
    workspace *= m;
    if (workspace > max_workspace)
      throw GuardError("transfer matrix workspace M^(n+1) exceeds the configured limit " +
                       std::to_string(max_workspace) + " for M = " + std::to_string(m) +
                       ", n = " + std::to_string(n_sites));
  }
  const FieldMatrix ru = r(u);
  std::vector<std::vector<FieldMatrix>> blocks(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) blocks[a].push_back(detail::block(ru, m, a, b));

  // partial[a][b] = sum over paths a -> ... -> b of the kron of the blocks
  std::vector<std::vector<FieldMatrix>> partial = blocks;
  for (std::size_t site = 1; site < n_sites; ++site) {
    std::vector<std::vector<FieldMatrix>> next(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t d = partial[a][0].rows() * m;
        FieldMatrix acc(d, d);
        for (std::size_t b = 0; b < m; ++b) {
          if (partial[a][b].is_zero() || blocks[b][c].is_zero()) continue;
          acc += kron(partial[a][b], blocks[b][c]);
        }
        next[a].push_back(std::move(acc));
      }
    partial = std::move(next);
  }
  FieldMatrix t = partial[0][0];
  for (std::size_t a = 1; a < m; ++a) t += partial[a][a];
  return t;
}

/// The same trace computed from full embeddings R_0k on C^M^(n+1); an
/// independent reference for small chains.
inline FieldMatrix transfer_matrix_embedded(const SpectralRMatrix& r, const Rational& u, std::size_t n_sites) {
  const std::size_t m = r.site_dim();
  const FieldMatrix ru = r(u);
  std::size_t total = m;
  for (std::size_t k = 0; k < n_sites; ++k) total *= m;
  FieldMatrix product = FieldMatrix::identity(total);
  for (std::size_t site = 1; site <= n_sites; ++site) {
    // R_0k = S (R_01 (x) I) S with S swapping tensor factors 1 and k
    std::size_t rest = 1;
    for (std::size_t k = 2; k <= n_sites; ++k) rest *= m;
    FieldMatrix r01 = kron(ru, FieldMatrix::identity(rest));
    FieldMatrix swap = FieldMatrix::identity(total);
    if (site > 1) {
      swap = FieldMatrix(total, total);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<std::size_t> digits(n_sites + 1);
        std::size_t x = idx;
        for (std::size_t k = n_sites + 1; k-- > 0;) {
          digits[k] = x % m;
          x /= m;
        }
        std::swap(digits[1], digits[site]);
        std::size_t target = 0;
        for (std::size_t k = 0; k <= n_sites; ++k) target = target * m + digits[k];
        swap(target, idx) = 1;
      }
    }
    product = product * (swap * r01 * swap);
  }
  return partial_trace_first(product, m);
}

/// R12(u-v) R13(u) R23(v) - R23(v) R13(u) R12(u-v).
inline CheckReport check_spectral_ybe(const SpectralRMatrix& r, const Rational& u, const Rational& v) {
  const std::string name = "spectral YBE " + r.name() + " (u,v)=(" + u.get_str() + "," + v.get_str() + ")";
  const std::string anchor = "R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v)";
  try {
    const std::size_t m = r.site_dim();
    const auto a = detail::three_legs(r(u - v), m);
    const auto b = detail::three_legs(r(u), m);
    const auto c = detail::three_legs(r(v), m);
    return residual_check(name, anchor, a.x12 * b.x13 * c.x23 - c.x23 * b.x13 * a.x12);
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// R(0) = P.
inline CheckReport check_regularity(const SpectralRMatrix& r) {
  const std::string name = "regularity " + r.name() + " R(0)=P";
  const std::string anchor = "R(0) = P";
  try {
    return residual_check(name, anchor, r(Rational(0)) - build_P(r.site_dim()));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// [t(u), t(v)] on n sites.
inline CheckReport check_transfer_commute(const SpectralRMatrix& r, const Rational& u, const Rational& v,
                                          std::size_t n_sites, std::size_t max_workspace = 625) {
  const std::string name = "transfer commute " + r.name() + " n=" + std::to_string(n_sites) + " (u,v)=(" +
                           u.get_str() + "," + v.get_str() + ")";
  const std::string anchor = "[t(u), t(v)] = 0";
  try {
    const FieldMatrix tu = transfer_matrix(r, u, n_sites, max_workspace);
    const FieldMatrix tv = transfer_matrix(r, v, n_sites, max_workspace);
    return residual_check(name, anchor, commutator(tu, tv));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// R(u) R21(-u) = c(u) I; the report passes iff the product is scalar and
/// records c(u) in the note.
inline CheckReport check_unitarity_scalar(const SpectralRMatrix& r, const Rational& u) {
  const std::string name = "spectral unitarity " + r.name() + " u=" + u.get_str();
  const std::string anchor = "R(u) R21(-u) = c(u) 1";
  try {
    const FieldMatrix p = build_P(r.site_dim());
    const FieldMatrix prod = r(u) * p * r(-u) * p;
    const FieldElem c = prod(0, 0);
    CheckReport rep = residual_check(name, anchor, prod - FieldMatrix::identity(prod.rows()) * c);
    return rep.with_note("c(u) = " + c.to_string());
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

}  // namespace twistlab
