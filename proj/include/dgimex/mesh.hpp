#pragma once

#include <array>
#include <vector>

#include "dgimex/lgl.hpp"

namespace dgimex {

enum class Bc { periodic, no_flux };

/// Boundary condition per domain side.
struct SideBcs {
    Bc left = Bc::no_flux;
    Bc right = Bc::no_flux;
    Bc bottom = Bc::no_flux;
    Bc top = Bc::no_flux;

    static SideBcs all_no_flux() { return {}; }
    static SideBcs channel() { // periodic in x, walls top/bottom
        return {Bc::periodic, Bc::periodic, Bc::no_flux, Bc::no_flux};
    }
    static SideBcs all_periodic() {
        return {Bc::periodic, Bc::periodic, Bc::periodic, Bc::periodic};
    }
};

// local face ids
enum Face : int { face_left = 0, face_right = 1, face_bottom = 2, face_top = 3 };

struct FaceInfo {
    int element;      // owning element
    int local_face;   // Face id on the owner
    int neighbor;     // neighbor element, or -1 for a wall
    double nx, nz;    // unit outward normal from the owner
};

/// Structured rectangular mesh of tensor-product LGL quad elements.
///
/// Elements are uniform; element e = ez*nex + ex, node (e,i,j) at flat index
/// e*npe + j*(order+1) + i with i the x-index. Interface nodes are duplicated
/// between elements (discontinuous storage).
struct Mesh {
    LglBasis basis;
    int nex = 0, nez = 0;
    double lx = 0.0, lz = 0.0;
    SideBcs bc;

    double dx = 0.0, dz = 0.0;    // element sizes
    int npe = 0;                  // nodes per element = (order+1)^2
    int num_elements = 0;
    int num_nodes = 0;

    std::vector<double> x, z;     // nodal coordinates, size num_nodes
    std::vector<double> mass;     // diagonal nodal mass w_i w_j dx dz / 4
    std::vector<int> neighbor;    // num_elements*4, element id or -1

    int order() const { return basis.order; }
    int n1() const { return basis.order + 1; }
    int node(int e, int i, int j) const { return e * npe + j * n1() + i; }
    int element(int ex, int ez) const { return ez * nex + ex; }
    int nbr(int e, int face) const { return neighbor[4 * e + face]; }

    /// Average LGL node spacing per direction (grid-resolution convention).
    double dx_node() const { return lx / (nex * basis.order); }
    double dz_node() const { return lz / (nez * basis.order); }

    int num_columns() const { return nex * n1(); }
    int column_size() const { return nez * n1(); }
    /// Flat node index of the k-th node (bottom to top) of column c.
    int column_node(int c, int k) const {
        const int ex = c / n1(), i = c % n1();
        const int ez = k / n1(), j = k % n1();
        return node(element(ex, ez), i, j);
    }

    /// Enumerate every face once (interior) plus all wall faces.
    std::vector<FaceInfo> faces() const;
};

/// Build a uniform box mesh. Throws on non-positive extent/counts or a
/// periodic tag that is not paired with the opposite side.
Mesh build_box_mesh(int nex, int nez, double lx, double lz, int order, SideBcs bc);

} // namespace dgimex
