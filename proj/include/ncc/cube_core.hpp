#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ncc/typed_graph.hpp"

namespace ncc {

// Word-packed sign vectors cap the ambient dimension.
inline constexpr int kMinDim = 4;
inline constexpr int kMaxDim = 24;

inline int succ_dir(int i, int m) { return i % m + 1; }
inline int pred_dir(int i, int m) { return i == 1 ? m : i - 1; }
inline std::uint32_t dir_bit(int i) { return std::uint32_t(1) << (i - 1); }

// A hypercube vertex: bit i-1 holds coordinate i, 1 = '+'.
struct SignVector {
  std::uint32_t bits = 0;
  int m = 0;
  friend bool operator==(const SignVector&, const SignVector&) = default;
};

// Accepts glyphs ("+--+", coordinate 1 first) or a binary numeral ("b1001").
SignVector parse_sign_vector(std::string_view text, int m);
std::string sign_glyphs(const SignVector& s);

// A proper face of the cube: '*' marks free coordinates. Signs are only
// meaningful where the star bit is clear.
struct FaceVector {
  std::uint32_t stars = 0;
  std::uint32_t signs = 0;
  int m = 0;
  int star_count() const;
  friend bool operator==(const FaceVector&, const FaceVector&) = default;
};

FaceVector parse_face_vector(std::string_view text);
std::string face_glyphs(const FaceVector& f);

struct FVector {
  std::uint64_t f0 = 0, f1 = 0, f2 = 0, f3 = 0;
  friend bool operator==(const FVector&, const FVector&) = default;
};

// Graph of the m-cube: 2^m vertices, m*2^(m-1) edges tagged by direction.
TypedGraph build_hypercube(int m);

// Facet test for three-star vectors whose first coordinate is free: the other
// two free coordinates must be cyclically adjacent within positions 2..m.
// Precondition violations throw; they are never reported as "not a facet".
bool is_first_star_facet(const FaceVector& f);

// A facet whose free directions contain both i and j = succ(i), certifying
// that consecutive-direction edges at a vertex span a common 2-face.
FaceVector two_face_witness(int m, int i, int j);

// Face counts of the neighborly cubical 4-polytope on the m-cube's vertices:
// 2^(m-2) * (4, 2m, 3m-6, m-2).
FVector f_vector_ncc(int m);

}  // namespace ncc
