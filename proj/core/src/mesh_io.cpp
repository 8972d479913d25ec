#include <fstream>
#include <sstream>

#include "resona/geometry.hpp"

namespace resona {

SurfaceMesh read_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open mesh file " + path.string());
    long nv = -1, nt = -1;
    if (!(in >> nv >> nt) || nv < 3 || nt < 1)
        throw InvalidArgument("bad mesh header in " + path.string());
    std::vector<Vec3> v(static_cast<std::size_t>(nv));
    for (auto& x : v)
        if (!(in >> x.x() >> x.y() >> x.z()))
            throw InvalidArgument("truncated vertex block in " + path.string());
    std::vector<std::array<int, 3>> t(static_cast<std::size_t>(nt));
    std::vector<int> rid(static_cast<std::size_t>(nt));
    for (long i = 0; i < nt; ++i)
        if (!(in >> t[i][0] >> t[i][1] >> t[i][2] >> rid[i]))
            throw InvalidArgument("truncated triangle block in " + path.string());
    return SurfaceMesh(std::move(v), std::move(t), std::move(rid));
}

void write_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write mesh file " + path.string());
    out.precision(17);
    out << mesh.vertices().size() << ' ' << mesh.n_panels() << '\n';
    for (const auto& x : mesh.vertices()) out << x.x() << ' ' << x.y() << ' ' << x.z() << '\n';
    for (std::size_t p = 0; p < mesh.n_panels(); ++p) {
        const auto& t = mesh.triangles()[p];
        out << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << mesh.resonator(p) << '\n';
    }
}

}  // namespace resona
