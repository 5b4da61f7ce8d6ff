#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hermlie/curvature.hpp"

namespace hermlie {

/// Curvature known only at a single point, with no Lie algebra behind it.
struct PointwiseCurvature {
  CurvatureTensor R;
  RicciMatrix Ric;
};

struct Fixture {
  std::string name;
  std::optional<HermitianLieAlgebra> algebra;
  std::optional<PointwiseCurvature> pointwise;

  bool is_pointwise() const { return pointwise.has_value(); }
};

inline std::vector<std::string> fixture_names() { return {"abelian", "heisenberg", "kodaira", "sl2c", "wallach"}; }

namespace detail {

inline PointwiseCurvature wallach_point() {
  Tensor4 r(3);
  // Nonzero values at the reference point (1-based in comments); the last
  // three are forced by conj(R_{i j̄ k l̄}) = R_{j ī l k̄}.
  r(0, 0, 0, 0) = 2.0;   // R_{1111}
  r(1, 1, 1, 1) = 2.0;   // R_{2222}
  r(2, 2, 2, 2) = 2.0;   // R_{3333}
  r(1, 1, 0, 0) = 1.0;   // R_{2211}
  r(1, 1, 2, 2) = 1.0;   // R_{2233}
  r(0, 1, 1, 0) = 1.0;   // R_{1221}
  r(2, 1, 1, 2) = 1.0;   // R_{3223}
  r(0, 2, 2, 0) = -1.0;  // R_{1331}
  r(1, 0, 0, 1) = 1.0;   // R_{2112}
  r(1, 2, 2, 1) = 1.0;   // R_{2332}
  r(2, 0, 0, 2) = -1.0;  // R_{3113}
  return {r, first_ricci(r)};
}

}  // namespace detail

/// "abelian" (n = 3), "abelian:N", "heisenberg", "kodaira", "sl2c", "wallach".
inline Fixture fixture(const std::string& name) {
  if (name == "abelian" || name.rfind("abelian:", 0) == 0) {
    std::size_t n = 3;
    if (name.size() > 8) {
      const std::string tail = name.substr(8);
      if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 3)
        throw InputError("abelian fixture size must be a positive integer");
      n = std::stoul(tail);
      if (n == 0) throw InputError("abelian fixture size must be a positive integer");
    }
    return {name, HermitianLieAlgebra::abelian(n), std::nullopt};
  }
  if (name == "heisenberg") {
    // [e_1, e_2] = e_3: Salamon form with the nilpotent direction last.
    Tensor3 c(3), d(3);
    c(2, 0, 1) = 1.0;
    c(2, 1, 0) = -1.0;
    return {name, HermitianLieAlgebra::make(std::move(c), std::move(d), FrameKind::Salamon), std::nullopt};
  }
  if (name == "kodaira") {
    Tensor3 c(2), d(2);
    d(0, 1, 0) = -1.0;  // D^1_{21}
    return {name, HermitianLieAlgebra::make(std::move(c), std::move(d), FrameKind::Salamon), std::nullopt};
  }
  if (name == "sl2c") {
    Tensor3 c(3), d(3);
    // C^k_{ij} = ε_{ijk}
    const std::size_t cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& t : cyc) {
      c(t[2], t[0], t[1]) = 1.0;
      c(t[2], t[1], t[0]) = -1.0;
    }
    return {name, HermitianLieAlgebra::make(std::move(c), std::move(d)), std::nullopt};
  }
  if (name == "wallach") return {name, std::nullopt, detail::wallach_point()};
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace hermlie
