#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "resona/common.hpp"
#include "resona/curve.hpp"
#include "resona/geometry.hpp"
#include "resona/green.hpp"

namespace resona {

enum class OperatorKind : std::uint32_t {
    SingleLayer = 1,
    NeumannPoincare = 2,
    ExpansionS1 = 11,
    ExpansionS2 = 12,
    ExpansionS3 = 13,
    ExpansionK2 = 22,
    ExpansionK3 = 23,
};

struct DenseOperator {
    MatC entries;
    OperatorKind kind = OperatorKind::SingleLayer;
    cplx wavenumber = 0.0;

    Eigen::Index size() const { return entries.rows(); }
    bool all_finite() const { return entries.allFinite(); }
};

// Rule used for the smooth kernel part on off-diagonal panel pairs. The
// self panel always uses the 7-point rule.
enum class SmoothRule { Centroid, Dunavant7 };

struct AssemblyOptions {
    int threads = 0;
    SmoothRule rule = SmoothRule::Dunavant7;
};

// int_T 1/|p - y| dA(y), exact for a flat triangle.
double laplace_triangle_potential(const Vec3& p, const std::array<Vec3, 3>& tri);
// Signed solid angle of the triangle seen from p; positive when p lies on
// the side opposite to the normal.
double solid_angle(const Vec3& p, const std::array<Vec3, 3>& tri);

// Piecewise-constant collocation at panel centroids.
DenseOperator assemble_single_layer(const SurfaceMesh& mesh, cplx k, const AssemblyOptions& opt = {});
DenseOperator assemble_single_layer(const SurfaceMesh& mesh, const Kernel3D& kernel,
                                    const AssemblyOptions& opt = {});
// K* with the Laplace part taken as the area-weighted adjoint of the
// solid-angle double layer, so int_{dD_i} (-1/2 I + K*)[phi] = 0 holds exactly.
DenseOperator assemble_neumann_poincare(const SurfaceMesh& mesh, cplx k, const AssemblyOptions& opt = {});
DenseOperator assemble_neumann_poincare(const SurfaceMesh& mesh, const Kernel3D& kernel,
                                        const AssemblyOptions& opt = {});

// Real Laplace single layer (k = 0).
MatR laplace_single_layer(const SurfaceMesh& mesh, int threads = 0);

enum class ExpansionTerm { S1, S2, S3, K2, K3 };
// 'S' orders 1..3, 'K' orders 2..3.
ExpansionTerm expansion_term(char op, int order);
std::vector<DenseOperator> assemble_expansion_terms(const SurfaceMesh& mesh,
                                                    std::span<const ExpansionTerm> terms,
                                                    const AssemblyOptions& opt = {});

// Little-endian: n (u32), kind (u32), then n*n (re, im) f64 pairs row-major.
void dump_operator(const DenseOperator& op, const std::filesystem::path& path);
DenseOperator load_operator(const std::filesystem::path& path);

// Pivoted LU with a reciprocal condition estimate; warns past 1e12.
class DenseSolver {
public:
    explicit DenseSolver(const MatC& A, const std::string& op = "dense solve");
    MatC solve(const MatC& B) const { return lu_.solve(B); }
    VecC solve(const VecC& b) const { return lu_.solve(b); }
    double rcond() const { return rcond_; }

private:
    Eigen::PartialPivLU<MatC> lu_;
    double rcond_;
};

class DenseSolverReal {
public:
    explicit DenseSolverReal(const MatR& A, const std::string& op = "dense solve");
    MatR solve(const MatR& B) const { return lu_.solve(B); }
    double rcond() const { return rcond_; }

private:
    Eigen::PartialPivLU<MatR> lu_;
    double rcond_;
};

// Warning sink, default writes to stderr; an empty handler restores it.
void set_warning_handler(std::function<void(const std::string&)> handler);
void warn(const std::string& msg);

// --- two-dimensional variant ------------------------------------------------

// int_a^b ln|p - y| ds(y)
double log_segment_integral(const Vec2& p, const Vec2& a, const Vec2& b);

MatC assemble_single_layer_2d(const CurveMesh& mesh, const LatticeGreen2D& g, int threads = 0);

// S[phi](x) for a piecewise-constant density.
cplx evaluate_single_layer_2d(const CurveMesh& mesh, const LatticeGreen2D& g, const VecC& density,
                              const Vec2& x);

}  // namespace resona
