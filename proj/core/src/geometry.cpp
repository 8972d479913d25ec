#include "resona/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace resona {

void MaterialParams::validate() const
{
    if (!(rho > 0 && kappa > 0 && rho_b > 0 && kappa_b > 0))
        throw InvalidArgument("material parameters must be positive");
    if (!(delta() < 1.0))
        throw InvalidArgument("contrast rho_b/rho must lie in (0,1)");
}

MaterialParams MaterialParams::from_contrast(double delta, double v, double v_b)
{
    MaterialParams m;
    m.rho = 1.0;
    m.rho_b = delta;
    m.kappa = v * v;
    m.kappa_b = delta * v_b * v_b;
    m.validate();
    return m;
}

MaterialParams MaterialParams::air_in_water()
{
    MaterialParams m;
    m.rho = 1000.0;
    m.kappa = 2.2e9;
    m.rho_b = 1.2;
    m.kappa_b = 1.42e5;  // adiabatic, 1.4 * 1 atm
    return m;
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles,
                         std::vector<int> resonator_id)
    : verts_(std::move(vertices)), tris_(std::move(triangles)), rid_(std::move(resonator_id))
{
    build();
}

void SurfaceMesh::build()
{
    const std::size_t np = tris_.size();
    if (np == 0) throw InvalidArgument("mesh has no panels");
    if (rid_.size() != np) throw InvalidArgument("resonator id count differs from panel count");

    int maxid = -1;
    for (int r : rid_) {
        if (r < 0) throw InvalidArgument("negative resonator id");
        maxid = std::max(maxid, r);
    }
    n_res_ = maxid + 1;
    std::vector<int> seen(n_res_, 0);
    for (int r : rid_) seen[r] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw InvalidArgument("resonator ids must be contiguous from 0");

    const int nv = static_cast<int>(verts_.size());
    area_.resize(static_cast<Eigen::Index>(np));
    cent_.resize(np);
    normal_.resize(np);
    volume_.assign(n_res_, 0.0);
    surf_.assign(n_res_, 0.0);
    std::vector<Vec3> closure(n_res_, Vec3::Zero());
    hmax_ = 0.0;

    for (std::size_t p = 0; p < np; ++p) {
        for (int c : tris_[p])
            if (c < 0 || c >= nv) throw InvalidArgument("triangle index out of range");
        const auto [a, b, c] = panel(p);
        Vec3 cr = (b - a).cross(c - a);
        double twice = cr.norm();
        if (!(twice > 0)) throw InvalidArgument("degenerate panel " + std::to_string(p));
        area_[p] = 0.5 * twice;
        normal_[p] = cr / twice;
        cent_[p] = (a + b + c) / 3.0;
        int r = rid_[p];
        surf_[r] += area_[p];
        volume_[r] += area_[p] * cent_[p].dot(normal_[p]) / 3.0;
        closure[r] += area_[p] * normal_[p];
        hmax_ = std::max({hmax_, (b - a).norm(), (c - b).norm(), (a - c).norm()});
    }

    for (int r = 0; r < n_res_; ++r) {
        if (closure[r].norm() >= 1e-6 * surf_[r])
            throw InvalidArgument("resonator " + std::to_string(r) + " surface is not closed");
        if (!(volume_[r] > 0))
            throw InvalidArgument("resonator " + std::to_string(r) +
                                  " has non-positive volume (inward normals?)");
    }

    // bounding spheres centred on each resonator's bounding box, so that
    // uneven vertex density does not pull the centre
    center_.assign(n_res_, Vec3::Zero());
    bound_.assign(n_res_, 0.0);
    std::vector<int> owner(nv, -1);
    for (std::size_t p = 0; p < np; ++p)
        for (int c : tris_[p]) owner[c] = rid_[p];
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Vec3> lo(n_res_, Vec3::Constant(inf)), hi(n_res_, Vec3::Constant(-inf));
    for (int v = 0; v < nv; ++v)
        if (owner[v] >= 0) {
            lo[owner[v]] = lo[owner[v]].cwiseMin(verts_[v]);
            hi[owner[v]] = hi[owner[v]].cwiseMax(verts_[v]);
        }
    for (int r = 0; r < n_res_; ++r) center_[r] = 0.5 * (lo[r] + hi[r]);
    for (int v = 0; v < nv; ++v)
        if (owner[v] >= 0)
            bound_[owner[v]] = std::max(bound_[owner[v]], (verts_[v] - center_[owner[v]]).norm());
}

SurfaceMesh SurfaceMesh::translated(const Vec3& t) const
{
    auto v = verts_;
    for (auto& x : v) x += t;
    return SurfaceMesh(std::move(v), tris_, rid_);
}

SurfaceMesh SurfaceMesh::scaled(double s) const
{
    if (!(s > 0)) throw InvalidArgument("scale factor must be positive");
    auto v = verts_;
    for (auto& x : v) x *= s;
    return SurfaceMesh(std::move(v), tris_, rid_);
}

SurfaceMesh SurfaceMesh::point_reflected() const
{
    auto v = verts_;
    for (auto& x : v) x = -x;
    auto t = tris_;
    for (auto& tri : t) std::swap(tri[1], tri[2]);
    return SurfaceMesh(std::move(v), std::move(t), rid_);
}

SurfaceMesh SurfaceMesh::merge(const SurfaceMesh& a, const SurfaceMesh& b)
{
    auto v = a.verts_;
    v.insert(v.end(), b.verts_.begin(), b.verts_.end());
    auto t = a.tris_;
    const int off = static_cast<int>(a.verts_.size());
    for (auto tri : b.tris_) t.push_back({tri[0] + off, tri[1] + off, tri[2] + off});
    auto r = a.rid_;
    for (int id : b.rid_) r.push_back(id + a.n_res_);
    return SurfaceMesh(std::move(v), std::move(t), std::move(r));
}

void SurfaceMesh::check_no_overlap() const
{
    for (int i = 0; i < n_res_; ++i)
        for (int j = i + 1; j < n_res_; ++j)
            if ((center_[i] - center_[j]).norm() <= bound_[i] + bound_[j])
                throw InvalidArgument("resonators " + std::to_string(i) + " and " +
                                      std::to_string(j) + " overlap");
}

SurfaceMesh make_sphere_mesh(const Vec3& center, double radius, int refinement)
{
    if (!(radius > 0)) throw InvalidArgument("sphere radius must be positive");
    if (refinement < 0 || refinement > 7) throw InvalidArgument("refinement must be in 0..7");

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& x : v) x.normalize();
    std::vector<std::array<int, 3>> f = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int level = 0; level < refinement; ++level) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            v.push_back((v[a] + v[b]).normalized());
            int id = static_cast<int>(v.size()) - 1;
            mid.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> g;
        g.reserve(f.size() * 4);
        for (auto [a, b, c] : f) {
            int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
            g.push_back({a, ab, ca});
            g.push_back({b, bc, ab});
            g.push_back({c, ca, bc});
            g.push_back({ab, bc, ca});
        }
        f = std::move(g);
    }
    for (auto& x : v) x = center + radius * x;
    std::vector<int> rid(f.size(), 0);
    return SurfaceMesh(std::move(v), std::move(f), std::move(rid));
}

SurfaceMesh make_graded_sphere_mesh(const Vec3& center, double radius, int refinement, const Vec3& focus,
                                    double grading)
{
    if (!(grading >= 1.0)) throw InvalidArgument("sphere grading must be >= 1");
    if (std::abs(focus.norm() - 1.0) > 1e-12) throw InvalidArgument("grading focus must be a unit vector");
    SurfaceMesh unit = make_sphere_mesh(Vec3::Zero(), 1.0, refinement);
    std::vector<Vec3> v = unit.vertices();
    for (auto& x : v) {
        // stereographic from -focus, shrink by grading, project back
        const double c = std::clamp(x.dot(focus), -1.0, 1.0);
        const double theta = std::acos(c);
        Vec3 side = x - c * focus;
        const double sn = side.norm();
        if (sn < 1e-15) continue;
        side /= sn;
        const double t = 2.0 * std::atan(std::tan(0.5 * theta) / grading);
        x = std::cos(t) * focus + std::sin(t) * side;
    }
    for (auto& x : v) x = center + radius * x;
    return SurfaceMesh(std::move(v), unit.triangles(), unit.resonator_ids());
}

SurfaceMesh make_dimer(const SurfaceMesh& shape, double separation, const Vec3& orientation)
{
    if (shape.n_resonators() != 1) throw InvalidArgument("dimer shape must be a single resonator");
    if (std::abs(orientation.norm() - 1.0) > 1e-12)
        throw InvalidArgument("dimer orientation must be a unit vector");
    SurfaceMesh first = shape.translated(-0.5 * separation * orientation);
    SurfaceMesh dimer = SurfaceMesh::merge(first, first.point_reflected());
    dimer.check_no_overlap();
    return dimer;
}

SurfaceMesh make_sphere_dimer(double radius, double gap, int refinement, const Vec3& orientation,
                              double grading)
{
    if (!(gap > 0)) throw InvalidArgument("dimer gap must be positive");
    SurfaceMesh shape = grading == 1.0
                            ? make_sphere_mesh(Vec3::Zero(), radius, refinement)
                            : make_graded_sphere_mesh(Vec3::Zero(), radius, refinement, orientation, grading);
    return make_dimer(shape, 2 * radius + gap, orientation);
}

SurfaceMesh make_graded_array(std::span<const double> radii, const SpacingRule& rule,
                              int refinement)
{
    if (radii.empty()) throw InvalidArgument("graded array needs at least one radius");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw InvalidArgument("graded array radii must be strictly increasing");
    const double diam = 2.0 * std::accumulate(radii.begin(), radii.end(), 0.0);
    const std::size_t n = radii.size();
    double gap = 0.0;
    if (n > 1) {
        gap = (rule.total_extent - diam) / static_cast<double>(n - 1);
        if (!(gap > 0)) throw InvalidArgument("graded array does not fit: resonators overlap");
    }
    SurfaceMesh out;
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x += radii[i];
        SurfaceMesh s = make_sphere_mesh(Vec3(x, 0, 0), radii[i], refinement);
        out = (i == 0) ? s : SurfaceMesh::merge(out, s);
        x += radii[i] + gap;
    }
    out.check_no_overlap();
    return out;
}

Lattice Lattice::cubic(double a)
{
    return from_vectors({Vec3(a, 0, 0), Vec3(0, a, 0), Vec3(0, 0, a)});
}

Lattice Lattice::honeycomb(double L)
{
    const double s = std::sqrt(3.0) / 2.0;
    return from_vectors({Vec3(L * s, L * 0.5, 0), Vec3(L * s, -L * 0.5, 0)});
}

Lattice Lattice::chain(double L) { return from_vectors({Vec3(L, 0, 0)}); }

Lattice Lattice::from_vectors(std::vector<Vec3> vectors)
{
    Lattice lat;
    lat.dim = static_cast<int>(vectors.size());
    if (lat.dim < 1 || lat.dim > 3) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
    lat.vectors = std::move(vectors);
    const int d = lat.dim;
    Eigen::MatrixXd Lm(3, d);
    for (int i = 0; i < d; ++i) Lm.col(i) = lat.vectors[i];
    // dual vectors in the span of the lattice vectors: A = 2 pi L (L^T L)^-1
    Eigen::MatrixXd gram = Lm.transpose() * Lm;
    if (std::abs(gram.determinant()) < 1e-300)
        throw InvalidArgument("lattice vectors are linearly dependent");
    Eigen::MatrixXd A = 2 * pi * Lm * gram.inverse();
    lat.dual.resize(d);
    for (int i = 0; i < d; ++i) lat.dual[i] = A.col(i);
    lat.cell_volume = std::sqrt(gram.determinant());
    lat.validate();
    return lat;
}

void Lattice::validate() const
{
    if (static_cast<int>(vectors.size()) != dim || static_cast<int>(dual.size()) != dim)
        throw InvalidArgument("lattice vector count differs from dimension");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double want = (i == j) ? 2 * pi : 0.0;
            if (std::abs(vectors[i].dot(dual[j]) - want) > 1e-10)
                throw InvalidArgument("lattice and dual vectors are not reciprocal");
        }
}

}  // namespace resona
