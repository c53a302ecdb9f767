#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "flho/su2rep.hpp"
#include "flho/tridiag.hpp"

namespace flho::oscillator {

/// Finite oscillator Hamiltonian H = (K/2)(Lx^2 + kappa^2 Ly^2) stored by
/// its two bands over the Lz eigenbasis (row r corresponds to m = l - r):
///   diag[r] = (K/4)(1 + kappa^2)(l(l+1) - m^2)
///   off2[r] = (K/8)(1 - kappa^2) sqrt((l(l+1) - m(m-1))(l(l+1) - (m-1)(m-2)))
/// with off2[r] coupling rows r and r+2 (i.e. m and m-2). Memory is O(N);
/// the dense matrix is only materialized on demand for small N.
struct BandedHamiltonian {
  std::int64_t l = 0;
  std::size_t n = 0;  // 2l + 1
  double big_k = 0.0;
  double kappa = 0.0;
  std::vector<double> diag;
  std::vector<double> off2;

  Eigen::MatrixXd dense(std::size_t max_n = 4096) const;
};

/// Band entries from the closed forms above. K > 0 required; kappa >= 0
/// (kappa = 0 and kappa >> 1 are both legal; the spectrum is invariant
/// under kappa -> 1/kappa with K -> K kappa^2).
BandedHamiltonian build_hamiltonian(std::int64_t l, double big_k, double kappa);
BandedHamiltonian build_hamiltonian(const su2rep::RepData& rep, double big_k, double kappa);

/// y = H x in O(N).
void apply(const BandedHamiltonian& h, const double* x, double* y);
std::vector<double> apply(const BandedHamiltonian& h, const std::vector<double>& x);

/// Gershgorin bound on the spectral radius; used to scale residual checks.
double norm_bound(const BandedHamiltonian& h);

/// H couples only m <-> m-2, so even-m and odd-m rows decouple into two
/// independent tridiagonal chains. rows[i] maps block index i back to the
/// chain row r.
struct ParityBlocks {
  tridiag::SymTridiag even;
  tridiag::SymTridiag odd;
  std::vector<std::size_t> even_rows;
  std::vector<std::size_t> odd_rows;
};

ParityBlocks parity_blocks(const BandedHamiltonian& h);

struct DegeneracyGroup {
  double value = 0.0;        // lowest member of the group
  std::size_t multiplicity = 0;
};

struct SpectrumOptions {
  std::size_t lowest = 0;    // 0 = full spectrum, else this many lowest levels
  std::size_t vectors = 0;   // eigenvectors for this many lowest levels (<= 64)
  double group_tol = -1.0;   // < 0 = default 1e-9 * K * l(l+1)
};

/// Merged parity-block spectrum. energies ascending; parities[i] is 0 for
/// the even-m block and 1 for the odd-m block; group_index[i] names the
/// degeneracy group (consecutive energies whose gap is <= group_tol_used).
/// vectors is row-major n x vector_count in chain coordinates.
struct SpectrumResult {
  std::vector<double> energies;
  std::vector<int> parities;
  std::vector<std::size_t> group_index;
  std::vector<DegeneracyGroup> groups;
  std::size_t n = 0;
  std::size_t vector_count = 0;
  std::vector<double> vectors;
  double group_tol_used = 0.0;

  double vec(std::size_t row, std::size_t j) const { return vectors[row * vector_count + j]; }
};

SpectrumResult spectrum(const BandedHamiltonian& h, const SpectrumOptions& opt = {});

/// max_j ||H v_j - E_j v_j|| over the returned vectors.
double max_vector_residual(const BandedHamiltonian& h, const SpectrumResult& s);

}  // namespace flho::oscillator
