#include "dgimex/mesh.hpp"

#include <stdexcept>

namespace dgimex {

Mesh build_box_mesh(int nex, int nez, double lx, double lz, int order, SideBcs bc) {
    if (nex < 1 || nez < 1)
        throw std::invalid_argument("build_box_mesh: element counts must be >= 1");
    if (lx <= 0.0 || lz <= 0.0)
        throw std::invalid_argument("build_box_mesh: extents must be positive");
    if ((bc.left == Bc::periodic) != (bc.right == Bc::periodic))
        throw std::invalid_argument("build_box_mesh: periodic x sides must be paired");
    if ((bc.bottom == Bc::periodic) != (bc.top == Bc::periodic))
        throw std::invalid_argument("build_box_mesh: periodic z sides must be paired");

    Mesh m;
    m.basis = lgl_basis(order);
    m.nex = nex;
    m.nez = nez;
    m.lx = lx;
    m.lz = lz;
    m.bc = bc;
    m.dx = lx / nex;
    m.dz = lz / nez;
    const int n1 = order + 1;
    m.npe = n1 * n1;
    m.num_elements = nex * nez;
    m.num_nodes = m.num_elements * m.npe;
    m.x.resize(m.num_nodes);
    m.z.resize(m.num_nodes);
    m.mass.resize(m.num_nodes);
    m.neighbor.assign(4 * m.num_elements, -1);

    const double jac = 0.25 * m.dx * m.dz;
    for (int ez = 0; ez < nez; ++ez)
        for (int ex = 0; ex < nex; ++ex) {
            const int e = m.element(ex, ez);
            const double x0 = ex * m.dx, z0 = ez * m.dz;
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    const int id = m.node(e, i, j);
                    m.x[id] = x0 + 0.5 * (m.basis.points[i] + 1.0) * m.dx;
                    m.z[id] = z0 + 0.5 * (m.basis.points[j] + 1.0) * m.dz;
                    m.mass[id] = m.basis.weights[i] * m.basis.weights[j] * jac;
                }
            m.neighbor[4 * e + face_left] =
                (ex > 0) ? m.element(ex - 1, ez)
                         : (bc.left == Bc::periodic ? m.element(nex - 1, ez) : -1);
            m.neighbor[4 * e + face_right] =
                (ex < nex - 1) ? m.element(ex + 1, ez)
                               : (bc.right == Bc::periodic ? m.element(0, ez) : -1);
            m.neighbor[4 * e + face_bottom] =
                (ez > 0) ? m.element(ex, ez - 1)
                         : (bc.bottom == Bc::periodic ? m.element(ex, nez - 1) : -1);
            m.neighbor[4 * e + face_top] =
                (ez < nez - 1) ? m.element(ex, ez + 1)
                               : (bc.top == Bc::periodic ? m.element(ex, 0) : -1);
        }
    return m;
}

std::vector<FaceInfo> Mesh::faces() const {
    std::vector<FaceInfo> out;
    const std::array<std::pair<double, double>, 4> normals = {
        {{-1.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}}};
    for (int e = 0; e < num_elements; ++e)
        for (int f = 0; f < 4; ++f) {
            const int k = nbr(e, f);
            // each interior face is emitted once, from its right/top side;
            // wall faces are emitted from the only side that has them
            if (k >= 0 && (f == face_left || f == face_bottom))
                continue;
            out.push_back({e, f, k, normals[f].first, normals[f].second});
        }
    return out;
}

} // namespace dgimex
