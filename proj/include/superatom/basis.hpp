#pragma once

#include <Eigen/SparseCore>

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

// Enumeration of the reduced collective Hilbert space (ground state,
// singly- and doubly-excited oscillator states, two continuum sinks) and
// construction of the laser-coupling matrix between them.

namespace superatom::basis {

enum class Symmetry { Spherical, Elliptic };

/// Singly-excited state |psi_{n,2l,0}>; l is forced to 0 in spherical
/// symmetry where the state is written |psi_n>.
struct SingleIdx {
    int n = 0;
    int l = 0;
    auto operator<=>(const SingleIdx&) const = default;
};

/// Doubly-excited state with center-of-mass (n_c, 2l_c) and relative
/// (n_d, 2l_d) quantum numbers; m >= 0 labels the grouped +-m pair.
struct DoubleIdx {
    int n_c = 0;
    int l_c = 0;
    int n_d = 0;
    int l_d = 0;
    int m = 0;
    auto operator<=>(const DoubleIdx&) const = default;
};

/// Spherically grouped doubly-excited state with n_c + n_d + 2l total
/// quanta.
struct SphDoubleIdx {
    int n_c = 0;
    int n_d = 0;
    int l = 0;
    auto operator<=>(const SphDoubleIdx&) const = default;
};

enum class StateKind { Ground, Single, Double, ContinuumDouble, ContinuumSingle };

/// Ordered enumeration of the collective basis. Layout: |G>, then all
/// singles graded by total quanta, then all doubles graded by total
/// quanta, then the doubly-excited sink |C|, then the singly-excited
/// sink |c>. Immutable after construction.
class BasisIndex {
public:
    BasisIndex(int n_max, Symmetry symmetry);

    Symmetry symmetry() const { return symmetry_; }
    int n_max() const { return n_max_; }

    /// Total number of states including both continuum sinks.
    int size() const { return 1 + single_count() + double_count() + 2; }
    int single_count() const { return (int)singles_.size(); }
    int double_count() const {
        return symmetry_ == Symmetry::Spherical ? (int)sph_doubles_.size()
                                                : (int)ell_doubles_.size();
    }

    int ground() const { return 0; }
    int r_state() const { return 1; } // |R> = |psi_0>, first single
    int singles_offset() const { return 1; }
    int doubles_offset() const { return 1 + single_count(); }
    int cont_double() const { return doubles_offset() + double_count(); } // |C>
    int cont_single() const { return cont_double() + 1; }                 // |c>

    StateKind kind(int index) const;

    const std::vector<SingleIdx>& singles() const { return singles_; }
    const std::vector<DoubleIdx>& elliptic_doubles() const { return ell_doubles_; }
    const std::vector<SphDoubleIdx>& spherical_doubles() const { return sph_doubles_; }

    SingleIdx single_at(int index) const; // expects a Single global index

    /// Global index lookups; return -1 if absent.
    int index_of(const SingleIdx& s) const;
    int index_of(const DoubleIdx& d) const;
    int index_of(const SphDoubleIdx& d) const;

    /// Human/machine-readable one-line description of a state.
    std::string describe(int index) const;

    bool operator==(const BasisIndex& other) const;

private:
    int n_max_;
    Symmetry symmetry_;
    std::vector<SingleIdx> singles_;
    std::vector<DoubleIdx> ell_doubles_;
    std::vector<SphDoubleIdx> sph_doubles_;
};

BasisIndex enumerate_basis(int n_max, Symmetry symmetry);

/// D_{n,l} = (4l+1) / (2^n n! (2n+4l+1)!!)
double norm_D(int n, int l);

/// N_{n,l} = sqrt(2^n n! / (2n+2l+1)!!)
double norm_N(int n, int l);

/// Overlap amplitude A between |psi_{n,2l,0} psi_000> and the
/// center-of-mass/relative product state (l_c, n_d, l_d, m), with
/// n_c = n + l - n_d - l_c - l_d. Returns 0 when any selection rule
/// (n_c >= 0, triangle |l_c-l_d| <= l <= l_c+l_d, |m| <= min(2l_c,2l_d))
/// is violated.
double coupling_A(int n, int l, int l_c, int n_d, int l_d, int m);

/// Sparse lowering operator S on the full basis: |G><R| plus the
/// single-from-double amplitudes. The raising operator is s.transpose().
struct CouplingMatrix {
    Eigen::SparseMatrix<double> s;

    /// Amplitude <single| S |double> for global indices.
    double amplitude(int single_index, int double_index) const {
        return s.coeff(single_index, double_index);
    }
};

CouplingMatrix laser_coupling_matrix(const BasisIndex& basis);

/// Plain-text round-trip: `id,kind,quantum numbers...` lines preceded by
/// a `symmetry,n_max` header.
void write_basis_csv(std::ostream& out, const BasisIndex& basis);
BasisIndex read_basis_csv(std::istream& in);

/// Sparse matrix dump `row,col,value` shared with the interactions
/// module.
void write_coupling_csv(std::ostream& out, const CouplingMatrix& coupling);

} // namespace superatom::basis
