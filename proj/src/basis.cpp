#include "superatom/basis.hpp"

#include "superatom/specfun.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace superatom::basis {

using specfun::log_double_factorial;
using specfun::log_factorial;
using specfun::wigner3j;

BasisIndex::BasisIndex(int n_max, Symmetry symmetry) : n_max_(n_max), symmetry_(symmetry) {
    if (n_max < 0) throw std::invalid_argument("BasisIndex: n_max must be >= 0");
    if (symmetry == Symmetry::Spherical) {
        for (int n = 0; n <= n_max; ++n) singles_.push_back({n, 0});
        for (int total = 0; total <= n_max; ++total)
            for (int n_c = 0; n_c <= total; ++n_c)
                for (int n_d = 0; n_d <= total - n_c; ++n_d) {
                    const int rest = total - n_c - n_d;
                    if (rest % 2 == 0) sph_doubles_.push_back({n_c, n_d, rest / 2});
                }
    } else {
        for (int total = 0; total <= n_max; ++total)
            for (int n = 0; n <= total; ++n) singles_.push_back({n, total - n});
        for (int total = 0; total <= n_max; ++total)
            for (int n_c = 0; n_c <= total; ++n_c)
                for (int l_c = 0; l_c <= total - n_c; ++l_c)
                    for (int n_d = 0; n_d <= total - n_c - l_c; ++n_d) {
                        const int l_d = total - n_c - l_c - n_d;
                        for (int m = 0; m <= std::min(2 * l_c, 2 * l_d); ++m)
                            ell_doubles_.push_back({n_c, l_c, n_d, l_d, m});
                    }
    }
}

BasisIndex enumerate_basis(int n_max, Symmetry symmetry) { return BasisIndex(n_max, symmetry); }

StateKind BasisIndex::kind(int index) const {
    if (index == ground()) return StateKind::Ground;
    if (index < doubles_offset()) return StateKind::Single;
    if (index < cont_double()) return StateKind::Double;
    if (index == cont_double()) return StateKind::ContinuumDouble;
    if (index == cont_single()) return StateKind::ContinuumSingle;
    throw std::out_of_range("BasisIndex: state index out of range");
}

SingleIdx BasisIndex::single_at(int index) const {
    if (kind(index) != StateKind::Single)
        throw std::out_of_range("BasisIndex: not a singly-excited state");
    return singles_[index - singles_offset()];
}

namespace {
template <typename T>
int position_of(const std::vector<T>& v, const T& x) {
    for (int i = 0; i < (int)v.size(); ++i)
        if (v[i] == x) return i;
    return -1;
}
} // namespace

int BasisIndex::index_of(const SingleIdx& s) const {
    const int p = position_of(singles_, s);
    return p < 0 ? -1 : singles_offset() + p;
}

int BasisIndex::index_of(const DoubleIdx& d) const {
    const int p = position_of(ell_doubles_, d);
    return p < 0 ? -1 : doubles_offset() + p;
}

int BasisIndex::index_of(const SphDoubleIdx& d) const {
    const int p = position_of(sph_doubles_, d);
    return p < 0 ? -1 : doubles_offset() + p;
}

std::string BasisIndex::describe(int index) const {
    std::ostringstream os;
    switch (kind(index)) {
    case StateKind::Ground:
        os << "G";
        break;
    case StateKind::Single: {
        const SingleIdx s = single_at(index);
        os << "psi(n=" << s.n << ",l=" << s.l << ")";
        break;
    }
    case StateKind::Double:
        if (symmetry_ == Symmetry::Spherical) {
            const SphDoubleIdx d = sph_doubles_[index - doubles_offset()];
            os << "Psi(n_c=" << d.n_c << ",n_d=" << d.n_d << ",l=" << d.l << ")";
        } else {
            const DoubleIdx d = ell_doubles_[index - doubles_offset()];
            os << "Psi(n_c=" << d.n_c << ",l_c=" << d.l_c << ",n_d=" << d.n_d
               << ",l_d=" << d.l_d << ",m=" << d.m << ")";
        }
        break;
    case StateKind::ContinuumDouble:
        os << "C";
        break;
    case StateKind::ContinuumSingle:
        os << "c";
        break;
    }
    return os.str();
}

bool BasisIndex::operator==(const BasisIndex& other) const {
    return n_max_ == other.n_max_ && symmetry_ == other.symmetry_ &&
           singles_ == other.singles_ && ell_doubles_ == other.ell_doubles_ &&
           sph_doubles_ == other.sph_doubles_;
}

double norm_D(int n, int l) {
    if (n < 0 || l < 0) throw std::invalid_argument("norm_D: negative quantum number");
    return std::exp(std::log(4.0 * l + 1.0) - n * std::log(2.0) - log_factorial(n) -
                    log_double_factorial(2 * n + 4 * l + 1));
}

double norm_N(int n, int l) {
    if (n < 0 || l < 0) throw std::invalid_argument("norm_N: negative quantum number");
    return std::exp(0.5 * (n * std::log(2.0) + log_factorial(n) -
                           log_double_factorial(2 * n + 2 * l + 1)));
}

double coupling_A(int n, int l, int l_c, int n_d, int l_d, int m) {
    if (n < 0 || l < 0 || l_c < 0 || n_d < 0 || l_d < 0) return 0.0;
    const int n_c = n + l - n_d - l_c - l_d;
    if (n_c < 0) return 0.0;
    if (l < std::abs(l_c - l_d) || l > l_c + l_d) return 0.0;
    if (std::abs(m) > std::min(2 * l_c, 2 * l_d)) return 0.0;
    const double ratio =
        std::exp(0.5 * (std::log(norm_D(n_c, l_c)) + std::log(norm_D(n_d, l_d)) -
                        std::log(norm_D(n, l))));
    const double sign = ((l_c + l_d - l) % 2 == 0) ? 1.0 : -1.0;
    return sign * (4.0 * l + 1.0) * std::exp2(-(n + l)) * ratio *
           wigner3j(2 * l_c, 2 * l_d, 2 * l, 0, 0, 0) *
           wigner3j(2 * l_c, 2 * l_d, 2 * l, -m, m, 0);
}

CouplingMatrix laser_coupling_matrix(const BasisIndex& basis) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.emplace_back(basis.ground(), basis.r_state(), 1.0);
    if (basis.symmetry() == Symmetry::Spherical) {
        for (const SingleIdx& s : basis.singles()) {
            const int row = basis.index_of(s);
            for (const SphDoubleIdx& d : basis.spherical_doubles()) {
                if (d.n_c + d.n_d + 2 * d.l != s.n) continue;
                const double val =
                    std::sqrt(2.0) * std::exp2(-s.n) *
                    std::exp(0.5 * (std::log(norm_D(d.n_c, d.l)) + std::log(norm_D(d.n_d, d.l)) -
                                    std::log(4.0 * d.l + 1.0) - std::log(norm_D(s.n, 0))));
                trip.emplace_back(row, basis.index_of(d), val);
            }
        }
    } else {
        for (const SingleIdx& s : basis.singles()) {
            const int row = basis.index_of(s);
            for (const DoubleIdx& d : basis.elliptic_doubles()) {
                if (d.n_c + d.l_c + d.n_d + d.l_d != s.n + s.l) continue;
                const double a = coupling_A(s.n, s.l, d.l_c, d.n_d, d.l_d, d.m);
                if (a == 0.0) continue;
                const double val = 2.0 * a / std::sqrt(d.m == 0 ? 2.0 : 1.0);
                trip.emplace_back(row, basis.index_of(d), val);
            }
        }
    }
    CouplingMatrix c;
    c.s.resize(basis.size(), basis.size());
    c.s.setFromTriplets(trip.begin(), trip.end());
    c.s.makeCompressed();
    return c;
}

void write_basis_csv(std::ostream& out, const BasisIndex& basis) {
    out << "symmetry,"
        << (basis.symmetry() == Symmetry::Spherical ? "spherical" : "elliptic") << "\n";
    out << "n_max," << basis.n_max() << "\n";
    out << "id,kind,q1,q2,q3,q4,q5\n";
    for (int i = 0; i < basis.size(); ++i) {
        out << i << ",";
        switch (basis.kind(i)) {
        case StateKind::Ground:
            out << "G,,,,,";
            break;
        case StateKind::Single: {
            const SingleIdx s = basis.single_at(i);
            out << "single," << s.n << "," << s.l << ",,,";
            break;
        }
        case StateKind::Double:
            if (basis.symmetry() == Symmetry::Spherical) {
                const SphDoubleIdx d = basis.spherical_doubles()[i - basis.doubles_offset()];
                out << "double," << d.n_c << "," << d.n_d << "," << d.l << ",,";
            } else {
                const DoubleIdx d = basis.elliptic_doubles()[i - basis.doubles_offset()];
                out << "double," << d.n_c << "," << d.l_c << "," << d.n_d << "," << d.l_d << ","
                    << d.m;
            }
            break;
        case StateKind::ContinuumDouble:
            out << "C,,,,,";
            break;
        case StateKind::ContinuumSingle:
            out << "c,,,,,";
            break;
        }
        out << "\n";
    }
}

BasisIndex read_basis_csv(std::istream& in) {
    std::string line;
    auto next_line = [&]() {
        if (!std::getline(in, line)) throw std::runtime_error("basis csv: truncated file");
        return line;
    };
    std::string sym_line = next_line();
    if (sym_line.rfind("symmetry,", 0) != 0)
        throw std::runtime_error("basis csv: missing symmetry header");
    const std::string sym_name = sym_line.substr(9);
    Symmetry sym;
    if (sym_name == "spherical")
        sym = Symmetry::Spherical;
    else if (sym_name == "elliptic")
        sym = Symmetry::Elliptic;
    else
        throw std::runtime_error("basis csv: unknown symmetry '" + sym_name + "'");
    std::string nmax_line = next_line();
    if (nmax_line.rfind("n_max,", 0) != 0)
        throw std::runtime_error("basis csv: missing n_max header");
    const int n_max = std::stoi(nmax_line.substr(6));

    BasisIndex rebuilt(n_max, sym);
    next_line(); // column header
    int count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string id_field;
        std::getline(ls, id_field, ',');
        if (std::stoi(id_field) != count)
            throw std::runtime_error("basis csv: non-contiguous state ids");
        std::string kind_field;
        std::getline(ls, kind_field, ',');
        std::vector<int> q;
        std::string fld;
        while (std::getline(ls, fld, ','))
            if (!fld.empty()) q.push_back(std::stoi(fld));
        const StateKind k = rebuilt.kind(count);
        bool ok = false;
        switch (k) {
        case StateKind::Ground:
            ok = kind_field == "G";
            break;
        case StateKind::Single:
            ok = kind_field == "single" && q.size() == 2 &&
                 SingleIdx{q[0], q[1]} == rebuilt.single_at(count);
            break;
        case StateKind::Double:
            if (sym == Symmetry::Spherical)
                ok = kind_field == "double" && q.size() == 3 &&
                     SphDoubleIdx{q[0], q[1], q[2]} ==
                         rebuilt.spherical_doubles()[count - rebuilt.doubles_offset()];
            else
                ok = kind_field == "double" && q.size() == 5 &&
                     DoubleIdx{q[0], q[1], q[2], q[3], q[4]} ==
                         rebuilt.elliptic_doubles()[count - rebuilt.doubles_offset()];
            break;
        case StateKind::ContinuumDouble:
            ok = kind_field == "C";
            break;
        case StateKind::ContinuumSingle:
            ok = kind_field == "c";
            break;
        }
        if (!ok)
            throw std::runtime_error("basis csv: state " + std::to_string(count) +
                                     " does not match the canonical ordering");
        ++count;
    }
    if (count != rebuilt.size()) throw std::runtime_error("basis csv: wrong state count");
    return rebuilt;
}

void write_coupling_csv(std::ostream& out, const CouplingMatrix& coupling) {
    out << "row,col,value\n";
    for (int k = 0; k < coupling.s.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(coupling.s, k); it; ++it) {
            std::ostringstream v;
            v.precision(17);
            v << it.value();
            out << it.row() << "," << it.col() << "," << v.str() << "\n";
        }
}

} // namespace superatom::basis
