#pragma once

#include <array>
#include <vector>

#include "resona/common.hpp"

namespace resona {

// Closed polygonal curves in the plane, counter-clockwise, one or more
// resonators. Used by the two-dimensional honeycomb path.
class CurveMesh {
public:
    CurveMesh() = default;
    CurveMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 2>> segments,
              std::vector<int> resonator_id);

    std::size_t n_panels() const { return segs_.size(); }
    int n_resonators() const { return n_res_; }

    std::array<Vec2, 2> panel(std::size_t p) const { return {verts_[segs_[p][0]], verts_[segs_[p][1]]}; }
    double length(std::size_t p) const { return len_[p]; }
    const VecR& lengths() const { return len_; }
    const Vec2& midpoint(std::size_t p) const { return mid_[p]; }
    const Vec2& normal(std::size_t p) const { return normal_[p]; }
    int resonator(std::size_t p) const { return rid_[p]; }

    // Enclosed area of resonator i (shoelace).
    double area(int i) const { return area_[i]; }
    double perimeter(int i) const { return perim_[i]; }
    double max_panel_length() const { return len_.maxCoeff(); }

    CurveMesh translated(const Vec2& t) const;
    static CurveMesh merge(const CurveMesh& a, const CurveMesh& b);

private:
    void build();

    std::vector<Vec2> verts_;
    std::vector<std::array<int, 2>> segs_;
    std::vector<int> rid_;
    int n_res_ = 0;
    VecR len_;
    std::vector<Vec2> mid_, normal_;
    std::vector<double> area_, perim_;
};

// Regular polygon inscribed in the circle, first vertex at angle 0.
CurveMesh make_disk_curve(const Vec2& center, double radius, int n_segments);

}  // namespace resona
