#include "resona/curve.hpp"

#include <algorithm>
#include <cmath>

namespace resona {

CurveMesh::CurveMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 2>> segments,
                     std::vector<int> resonator_id)
    : verts_(std::move(vertices)), segs_(std::move(segments)), rid_(std::move(resonator_id))
{
    build();
}

void CurveMesh::build()
{
    const std::size_t np = segs_.size();
    if (np == 0) throw InvalidArgument("curve has no segments");
    if (rid_.size() != np) throw InvalidArgument("resonator id count differs from segment count");
    n_res_ = 1 + *std::max_element(rid_.begin(), rid_.end());
    len_.resize(static_cast<Eigen::Index>(np));
    mid_.resize(np);
    normal_.resize(np);
    area_.assign(n_res_, 0.0);
    perim_.assign(n_res_, 0.0);
    std::vector<Vec2> closure(n_res_, Vec2::Zero());
    for (std::size_t p = 0; p < np; ++p) {
        const auto [a, b] = panel(p);
        Vec2 t = b - a;
        double l = t.norm();
        if (!(l > 0)) throw InvalidArgument("degenerate segment");
        len_[p] = l;
        mid_[p] = 0.5 * (a + b);
        normal_[p] = Vec2(t.y(), -t.x()) / l;
        int r = rid_[p];
        if (r < 0) throw InvalidArgument("negative resonator id");
        area_[r] += 0.5 * (a.x() * b.y() - b.x() * a.y());
        perim_[r] += l;
        closure[r] += t;
    }
    for (int r = 0; r < n_res_; ++r) {
        if (closure[r].norm() > 1e-10 * perim_[r])
            throw InvalidArgument("curve of resonator " + std::to_string(r) + " is not closed");
        if (!(area_[r] > 0))
            throw InvalidArgument("curve of resonator " + std::to_string(r) + " is not counter-clockwise");
    }
}

CurveMesh CurveMesh::translated(const Vec2& t) const
{
    auto v = verts_;
    for (auto& x : v) x += t;
    return CurveMesh(std::move(v), segs_, rid_);
}

CurveMesh CurveMesh::merge(const CurveMesh& a, const CurveMesh& b)
{
    auto v = a.verts_;
    v.insert(v.end(), b.verts_.begin(), b.verts_.end());
    auto s = a.segs_;
    const int off = static_cast<int>(a.verts_.size());
    for (auto seg : b.segs_) s.push_back({seg[0] + off, seg[1] + off});
    auto r = a.rid_;
    for (int id : b.rid_) r.push_back(id + a.n_res_);
    return CurveMesh(std::move(v), std::move(s), std::move(r));
}

CurveMesh make_disk_curve(const Vec2& center, double radius, int n_segments)
{
    if (!(radius > 0)) throw InvalidArgument("disk radius must be positive");
    if (n_segments < 3) throw InvalidArgument("disk needs at least 3 segments");
    std::vector<Vec2> v(n_segments);
    std::vector<std::array<int, 2>> s(n_segments);
    for (int j = 0; j < n_segments; ++j) {
        double th = 2 * pi * j / n_segments;
        v[j] = center + radius * Vec2(std::cos(th), std::sin(th));
        s[j] = {j, (j + 1) % n_segments};
    }
    return CurveMesh(std::move(v), std::move(s), std::vector<int>(n_segments, 0));
}

}  // namespace resona
