#pragma once

#include <cstdint>
#include <vector>

namespace mincode {

/// Binary extension field GF(2^m), 1 <= m <= 32. Elements are bit vectors of
/// polynomial coefficients; arithmetic reduces modulo a fixed irreducible
/// polynomial of degree m.
class GaloisField {
 public:
  using Element = std::uint32_t;

  explicit GaloisField(unsigned degree);

  unsigned degree() const noexcept { return degree_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << degree_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  static Element add(Element a, Element b) noexcept { return a ^ b; }
  Element mul(Element a, Element b) const noexcept;
  Element pow(Element a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; `a` must be nonzero.
  Element inv(Element a) const;

 private:
  unsigned degree_;
  std::uint64_t modulus_;
};

/// Low-weight irreducible polynomial of the given degree, including the
/// leading x^degree term.
std::uint64_t irreducible_polynomial(unsigned degree);

/// Rank of the row vectors over the field.
std::size_t rank(const GaloisField& field, std::vector<std::vector<GaloisField::Element>> rows);

}  // namespace mincode
