#pragma once

#include <vector>

#include "trispec/error.hpp"

extern "C" void dsterf_(const int* n, double* d, double* e, int* info);

namespace trispec::lapack {

// Eigenvalues of a symmetric tridiagonal matrix, ascending, in place in d.
inline void sterf(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.resize(static_cast<std::size_t>(n));
  int info = 0;
  dsterf_(&n, d.data(), e.data(), &info);
  if (info != 0) fail(ErrorCode::inconsistency, "dsterf did not converge");
}

}  // namespace trispec::lapack
