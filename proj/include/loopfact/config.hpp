#pragma once

namespace loopfact {

/// Truncation and tolerance defaults shared by every numerical routine.
/// The CLI overrides fields from flags; nothing is read from the
/// environment.
struct Config {
  int toeplitz_n = 64;        // Toeplitz cutoff / series truncation degree
  int samples = 256;          // circle samples for pointwise decompositions
  double tol_exact = 1e-10;   // coefficient residual for exact-degree algebra
  double tol_trunc = 1e-6;    // comparisons involving Toeplitz truncation
};

}  // namespace loopfact
