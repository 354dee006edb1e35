#include "lieherm/invariant_forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lieherm {

namespace {

constexpr double kPruneThreshold = 1e-14;

// Parity sign of merging two disjoint ascending index blocks: counts pairs
// (x in a, y in b) with x > y.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int crossings = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    crossings += std::popcount(a >> (y + 1));
    b &= b - 1;
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

}  // namespace

InvariantForm::InvariantForm(int n) : n_(n) {
  if (n <= 0) throw ShapeMismatch("form dimension must be positive");
  if (n > 31) throw ShapeMismatch("form dimension above bitmask capacity");
}

InvariantForm InvariantForm::one(int n) {
  InvariantForm f(n);
  f.add_term(0, 0, 1.0);
  return f;
}

InvariantForm InvariantForm::basis_one_form(int n, int i, bool conjugated) {
  if (i < 0 || i >= n) throw std::out_of_range("basis one-form index out of range");
  InvariantForm f(n);
  const std::uint32_t m = 1u << i;
  f.add_term(conjugated ? 0 : m, conjugated ? m : 0, 1.0);
  return f;
}

InvariantForm InvariantForm::kahler_form(int n) {
  InvariantForm f(n);
  for (int i = 0; i < n; ++i) f.add_term(1u << i, 1u << i, iu);
  return f;
}

InvariantForm& InvariantForm::add_term(std::uint32_t mask_i, std::uint32_t mask_j,
                                       cdouble c) {
  const TermKey key{mask_i, mask_j};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (std::abs(c) > kPruneThreshold) terms_.emplace(key, c);
    return *this;
  }
  it->second += c;
  if (std::abs(it->second) <= kPruneThreshold) terms_.erase(it);
  return *this;
}

cdouble InvariantForm::coeff(std::uint32_t mask_i, std::uint32_t mask_j) const {
  const auto it = terms_.find(TermKey{mask_i, mask_j});
  return it == terms_.end() ? cdouble{0.0} : it->second;
}

InvariantForm InvariantForm::operator+(const InvariantForm& o) const {
  if (n_ != o.n_) throw DimensionMismatch("form dimensions differ");
  InvariantForm out = *this;
  for (const auto& [key, c] : o.terms_) out.add_term(key.bar_i, key.bar_j, c);
  return out;
}

InvariantForm InvariantForm::operator-(const InvariantForm& o) const {
  return *this + o * cdouble{-1.0};
}

InvariantForm InvariantForm::operator*(cdouble s) const {
  InvariantForm out(n_);
  for (const auto& [key, c] : terms_) out.add_term(key.bar_i, key.bar_j, c * s);
  return out;
}

InvariantForm InvariantForm::wedge(const InvariantForm& o) const {
  if (n_ != o.n_) throw DimensionMismatch("form dimensions differ");
  InvariantForm out(n_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      if ((ka.bar_i & kb.bar_i) != 0 || (ka.bar_j & kb.bar_j) != 0) continue;
      // Word [I1][J1][I2][J2]: move the I2 block across J1, then merge the
      // unbarred and barred blocks into ascending order.
      int sign = merge_sign(ka.bar_i, kb.bar_i) * merge_sign(ka.bar_j, kb.bar_j);
      if ((std::popcount(ka.bar_j) * std::popcount(kb.bar_i)) % 2 != 0) sign = -sign;
      out.add_term(ka.bar_i | kb.bar_i, ka.bar_j | kb.bar_j,
                   static_cast<double>(sign) * ca * cb);
    }
  return out;
}

InvariantForm InvariantForm::conj() const {
  InvariantForm out(n_);
  for (const auto& [key, c] : terms_) {
    const int sign =
        (std::popcount(key.bar_i) * std::popcount(key.bar_j)) % 2 == 0 ? 1 : -1;
    out.add_term(key.bar_j, key.bar_i, static_cast<double>(sign) * std::conj(c));
  }
  return out;
}

InvariantForm InvariantForm::bidegree_part(int p, int q) const {
  InvariantForm out(n_);
  for (const auto& [key, c] : terms_)
    if (std::popcount(key.bar_i) == p && std::popcount(key.bar_j) == q)
      out.add_term(key.bar_i, key.bar_j, c);
  return out;
}

std::vector<std::pair<int, int>> InvariantForm::bidegrees() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, c] : terms_) {
    (void)c;
    const std::pair<int, int> pq{std::popcount(key.bar_i), std::popcount(key.bar_j)};
    if (std::find(out.begin(), out.end(), pq) == out.end()) out.push_back(pq);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double InvariantForm::max_norm() const {
  double s = 0.0;
  for (const auto& [key, c] : terms_) {
    (void)key;
    s = std::max(s, std::abs(c));
  }
  return s;
}

double InvariantForm::l2_norm() const {
  double s = 0.0;
  for (const auto& [key, c] : terms_) {
    (void)key;
    s += std::norm(c);
  }
  return std::sqrt(s);
}

InvariantForm power(const InvariantForm& f, int k) {
  if (k < 0) throw std::invalid_argument("negative wedge power");
  InvariantForm out = InvariantForm::one(f.dim());
  for (int i = 0; i < k; ++i) out = out.wedge(f);
  return out;
}

ExteriorDerivative::ExteriorDerivative(const StructureConstants& sc) : n_(sc.dim()) {
  require_valid(sc);
  d_phi_.reserve(n_);
  d_phi_bar_.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    InvariantForm df(n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const cdouble cc = sc.C(i, j, k);
        if (cc != cdouble{0.0}) {
          const auto jk = InvariantForm::basis_one_form(n_, j, false)
                              .wedge(InvariantForm::basis_one_form(n_, k, false));
          df = df + jk * (-0.5 * cc);
        }
        const cdouble dd = std::conj(sc.D(j, i, k));
        if (dd != cdouble{0.0}) {
          const auto jk = InvariantForm::basis_one_form(n_, j, false)
                              .wedge(InvariantForm::basis_one_form(n_, k, true));
          df = df + jk * (-dd);
        }
      }
    d_phi_.push_back(df);
    d_phi_bar_.push_back(df.conj());
  }
}

const InvariantForm& ExteriorDerivative::d_basis(int i, bool conjugated) const {
  if (i < 0 || i >= n_) throw std::out_of_range("basis index out of range");
  return conjugated ? d_phi_bar_[i] : d_phi_[i];
}

InvariantForm ExteriorDerivative::d(const InvariantForm& f) const {
  if (f.dim() != n_) throw DimensionMismatch("form dimension differs from algebra");
  InvariantForm out(n_);
  for (const auto& [key, c] : f.terms()) {
    // d(x_1^..^x_m) = sum_a (-1)^(a-1) d(x_a) ^ (term with factor a removed);
    // the 2-form d(x_a) commutes across the remaining 1-forms for free.
    int position = 0;
    for (std::uint32_t rest = key.bar_i; rest != 0; rest &= rest - 1, ++position) {
      const int i = std::countr_zero(rest);
      InvariantForm stub(n_);
      stub.add_term(key.bar_i & ~(1u << i), key.bar_j,
                    (position % 2 == 0) ? c : -c);
      out = out + d_phi_[i].wedge(stub);
    }
    for (std::uint32_t rest = key.bar_j; rest != 0; rest &= rest - 1, ++position) {
      const int j = std::countr_zero(rest);
      InvariantForm stub(n_);
      stub.add_term(key.bar_i, key.bar_j & ~(1u << j),
                    (position % 2 == 0) ? c : -c);
      out = out + d_phi_bar_[j].wedge(stub);
    }
  }
  return out;
}

InvariantForm ExteriorDerivative::del(const InvariantForm& f) const {
  InvariantForm out(n_);
  for (const auto& [p, q] : f.bidegrees())
    out = out + d(f.bidegree_part(p, q)).bidegree_part(p + 1, q);
  return out;
}

InvariantForm ExteriorDerivative::dbar(const InvariantForm& f) const {
  InvariantForm out(n_);
  for (const auto& [p, q] : f.bidegrees())
    out = out + d(f.bidegree_part(p, q)).bidegree_part(p, q + 1);
  return out;
}

InvariantForm d(const InvariantForm& f, const StructureConstants& sc) {
  return ExteriorDerivative(sc).d(f);
}

InvariantForm del(const InvariantForm& f, const StructureConstants& sc) {
  return ExteriorDerivative(sc).del(f);
}

InvariantForm dbar(const InvariantForm& f, const StructureConstants& sc) {
  return ExteriorDerivative(sc).dbar(f);
}

}  // namespace lieherm
