#include "ncc/cube_core.hpp"

#include <bit>
#include <stdexcept>

namespace ncc {

namespace {

void require_dim(int m) {
  if (m < kMinDim || m > kMaxDim)
    throw std::invalid_argument("dimension-range: m must be in [" +
                                std::to_string(kMinDim) + "," + std::to_string(kMaxDim) +
                                "], got " + std::to_string(m));
}

void require_dir(int i, int m) {
  if (i < 1 || i > m)
    throw std::invalid_argument("direction-range: direction " + std::to_string(i) +
                                " outside 1.." + std::to_string(m));
}

}  // namespace

SignVector parse_sign_vector(std::string_view text, int m) {
  require_dim(m);
  SignVector s{0, m};
  if (!text.empty() && text[0] == 'b') {
    if (text.size() != std::size_t(m) + 1)
      throw std::invalid_argument("sign-vector: expected " + std::to_string(m) +
                                  " binary digits");
    for (int c = 1; c <= m; ++c) {
      char digit = text[std::size_t(m - c) + 1];
      if (digit == '1')
        s.bits |= dir_bit(c);
      else if (digit != '0')
        throw std::invalid_argument("sign-vector: bad digit in binary form");
    }
    return s;
  }
  if (text.size() != std::size_t(m))
    throw std::invalid_argument("sign-vector: expected " + std::to_string(m) + " glyphs");
  for (int c = 1; c <= m; ++c) {
    char glyph = text[std::size_t(c - 1)];
    if (glyph == '+')
      s.bits |= dir_bit(c);
    else if (glyph != '-')
      throw std::invalid_argument("sign-vector: glyphs must be '-' or '+'");
  }
  return s;
}

std::string sign_glyphs(const SignVector& s) {
  std::string out(std::size_t(s.m), '-');
  for (int c = 1; c <= s.m; ++c)
    if (s.bits & dir_bit(c)) out[std::size_t(c - 1)] = '+';
  return out;
}

int FaceVector::star_count() const { return std::popcount(stars); }

FaceVector parse_face_vector(std::string_view text) {
  int m = int(text.size());
  require_dim(m);
  FaceVector f{0, 0, m};
  for (int c = 1; c <= m; ++c) {
    char glyph = text[std::size_t(c - 1)];
    if (glyph == '*')
      f.stars |= dir_bit(c);
    else if (glyph == '+')
      f.signs |= dir_bit(c);
    else if (glyph != '-')
      throw std::invalid_argument("face-vector: glyphs must be '-', '+' or '*'");
  }
  if (f.star_count() < 1 || f.star_count() > 3)
    throw std::invalid_argument("face-star-count: proper faces carry 1..3 stars");
  return f;
}

std::string face_glyphs(const FaceVector& f) {
  std::string out(std::size_t(f.m), '-');
  for (int c = 1; c <= f.m; ++c) {
    if (f.stars & dir_bit(c))
      out[std::size_t(c - 1)] = '*';
    else if (f.signs & dir_bit(c))
      out[std::size_t(c - 1)] = '+';
  }
  return out;
}

TypedGraph build_hypercube(int m) {
  require_dim(m);
  TypedGraph g;
  g.stage = Stage::Cube;
  g.m = m;
  const std::uint32_t n = std::uint32_t(1) << m;
  g.labels.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) g.labels[v] = {v, 0, 0};
  g.edges.reserve(std::size_t(m) << (m - 1));
  for (std::uint32_t v = 0; v < n; ++v)
    for (int i = 1; i <= m; ++i)
      if (!(v & dir_bit(i)))
        g.edges.push_back({v, v | dir_bit(i), EdgeKind::Long, std::uint8_t(i)});
  g.finalize();
  return g;
}

bool is_first_star_facet(const FaceVector& f) {
  require_dim(f.m);
  if (f.star_count() != 3)
    throw std::invalid_argument("first-star-facet: needs exactly 3 stars, got " +
                                std::to_string(f.star_count()));
  if (!(f.stars & dir_bit(1)))
    throw std::invalid_argument("first-star-facet: first coordinate must be free");
  // The two remaining stars, as positions on the cycle (2,...,m).
  std::uint32_t rest = f.stars & ~dir_bit(1);
  int p = std::countr_zero(rest) + 1;
  rest &= rest - 1;
  int q = std::countr_zero(rest) + 1;
  return q - p == 1 || (p == 2 && q == f.m);
}

FaceVector two_face_witness(int m, int i, int j) {
  require_dim(m);
  require_dir(i, m);
  if (j != succ_dir(i, m))
    throw std::invalid_argument("two-face-witness: requires j = succ(i)");
  FaceVector f{0, 0, m};
  if (i == 1)
    f.stars = dir_bit(1) | dir_bit(2) | dir_bit(3);
  else if (i == m)
    f.stars = dir_bit(1) | dir_bit(m - 1) | dir_bit(m);
  else
    f.stars = dir_bit(1) | dir_bit(i) | dir_bit(i + 1);
  return f;
}

FVector f_vector_ncc(int m) {
  require_dim(m);
  const std::uint64_t scale = std::uint64_t(1) << (m - 2);
  return {4 * scale, std::uint64_t(2 * m) * scale, std::uint64_t(3 * m - 6) * scale,
          std::uint64_t(m - 2) * scale};
}

}  // namespace ncc
