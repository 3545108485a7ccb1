#pragma once

#include "glauert/surface.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Discrete surface form delta(p, q) = (grad_G p, grad_G q) + (p, q) on the
/// Gamma_inf P1 space; real symmetric positive definite. The stiffness part
/// annihilates constants.
struct SurfaceP1Form {
  RealSparseMatrix stiffness;
  RealSparseMatrix mass;

  RealSparseMatrix full() const { return stiffness + mass; }
};

/// Flat-triangle Laplace-Beltrami stiffness plus mass on Gamma_inf.
SurfaceP1Form assemble_delta_form(const SurfaceSpaces& spaces);

}  // namespace glauert
