#pragma once

#include <string>

#include "bowditch/numeric.hpp"

namespace bowditch {

enum class Model { plane, space3, cayley_tree };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::plane: return "plane";
    case Model::space3: return "space3";
    case Model::cayley_tree: return "cayley_tree";
  }
  return "?";
}

struct SpaceParams {
  Model model = Model::plane;
  Real delta = delta_hyperbolic_plane();
  Real boundary_tolerance = Real("1e-9");
  unsigned precision_bits = 256;
  // Loxodromic/parabolic cutoff on the stable norm for the Mobius models.
  Real hyperbolicity_eps = Real("1e-8");

  Real cancel_eps() const { return ldexp(Real(1), -static_cast<int>(precision_bits / 4)); }
  Real det_tolerance() const { return ldexp(Real(1), -static_cast<int>(precision_bits / 2)); }
};

inline SpaceParams plane_params() {
  SpaceParams p;
  p.model = Model::plane;
  return p;
}

inline SpaceParams space3_params() {
  SpaceParams p;
  p.model = Model::space3;
  return p;
}

inline SpaceParams cayley_params() {
  SpaceParams p;
  p.model = Model::cayley_tree;
  p.delta = 0;
  return p;
}

}  // namespace bowditch
