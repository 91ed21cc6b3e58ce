#include "mincode/galois.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace mincode {

namespace {

// Index = degree. Primitive trinomials/pentanomials from the usual tables.
constexpr std::array<std::uint64_t, 33> kPolynomials = {
    0,
    0x3,          0x7,          0xB,          0x13,         0x25,        0x43,
    0x83,         0x11D,        0x211,        0x409,        0x805,       0x1053,
    0x201B,       0x4443,       0x8003,       0x1100B,      0x20009,     0x40081,
    0x80027,      0x100009,     0x200005,     0x400003,     0x800021,    0x1000087,
    0x2000009,    0x4000047,    0x8000027,    0x10000009,   0x20000005,  0x40800007,
    0x80000009,   0x100400007,
};

}  // namespace

std::uint64_t irreducible_polynomial(unsigned degree) {
  if (degree < 1 || degree > 32) throw std::out_of_range("field degree must be in [1, 32]");
  return kPolynomials[degree];
}

GaloisField::GaloisField(unsigned degree) : degree_(degree), modulus_(irreducible_polynomial(degree)) {}

GaloisField::Element GaloisField::mul(Element a, Element b) const noexcept {
  std::uint64_t product = 0;
  std::uint64_t shifted = a;
  for (Element bits = b; bits != 0; bits >>= 1) {
    if (bits & 1u) product ^= shifted;
    shifted <<= 1;
  }
  for (int bit = 2 * static_cast<int>(degree_) - 2; bit >= static_cast<int>(degree_); --bit)
    if ((product >> bit) & 1u) product ^= modulus_ << (bit - static_cast<int>(degree_));
  return static_cast<Element>(product);
}

GaloisField::Element GaloisField::pow(Element a, std::uint64_t e) const noexcept {
  Element result = 1;
  while (e != 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

GaloisField::Element GaloisField::inv(Element a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  return pow(a, size() - 2);
}

std::size_t rank(const GaloisField& field, std::vector<std::vector<GaloisField::Element>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const auto scale = field.inv(rows[r][c]);
    for (auto& v : rows[r]) v = field.mul(v, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const auto f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] ^= field.mul(f, rows[r][j]);
    }
    ++r;
  }
  return r;
}

}  // namespace mincode
