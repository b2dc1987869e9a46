/**
 * Floating-point checks for the explicit Engel family on the 4-torus:
 *
 *   D = span{ d_theta, W },  W = cos(a) d_z + sin(a) V,
 *   a = pi (n theta + <alpha, p>),  V = cos(2 pi z) d_x + sin(2 pi z) d_y,
 *
 * over the contact form sin(2 pi z) dx + cos(2 pi z) dy on T^3. Coordinates
 * are (x, y, z, theta) with unit period. The plane field is a line field
 * inside the contact planes, so one full turn corresponds to an angle
 * increment of pi.
 */
#ifndef FIBERCOV_ENGEL_NUMERIC_HPP
#define FIBERCOV_ENGEL_NUMERIC_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fibercov::numeric {

using Vec4 = Eigen::Vector4d;

struct TorusEngelParams
{
    long long n = 1;
    std::array<long long, 3> alpha{0, 0, 0};
};

/// Point of T^4; coordinates stored in [0, 1).
struct Point4
{
    double x = 0, y = 0, z = 0, theta = 0;

    static Point4 wrapped(double x, double y, double z, double theta);
    Vec4 vec() const { return {x, y, z, theta}; }
};

/// Coefficient of alpha ^ d alpha against dx ^ dy ^ dz (theta is ignored).
double contact_defect(const Point4& p);

struct EngelFrame
{
    Vec4 d_theta;
    Vec4 W;
    Vec4 B1; // [d_theta, W]
    Vec4 B2; // [W, B1]
};

/// Plane-field angle a = pi (n theta + <alpha, p>).
double plane_angle(const TorusEngelParams& params, const Vec4& q);
Vec4 plane_vector(const TorusEngelParams& params, const Vec4& q);

/// Brackets from closed-form derivatives of this family.
EngelFrame engel_frame(const TorusEngelParams& params, const Point4& q);
/// Brackets from central finite differences (five-point stencil) of the fields.
EngelFrame engel_frame_fd(const TorusEngelParams& params, const Point4& q, double h = 1e-5);

/// Largest componentwise |analytic - finite difference| over B1 and B2.
double bracket_deviation(const TorusEngelParams& params, const Point4& q, double h = 1e-5);

struct PointReport
{
    std::array<int, 3> ranks{}; // dim D, dim [D,D], dim [E,E]
    std::array<double, 3> sv_ratio{}; // smallest / largest singular value per stage
};

struct EngelReport
{
    std::vector<PointReport> points;
    bool pass = false;
    double min_sv_ratio = 0;

    /// "point <i> ranks r2 r3 r4 sv2 <v> sv3 <v> sv4 <v>" lines, then the summary line.
    std::string to_text() const;
};

/// Relative singular-value threshold for counting rank.
inline constexpr double kRankTolerance = 1e-6;

/// Number of singular values above kRankTolerance times the largest.
int numeric_rank(const Eigen::MatrixXd& M, double* sv_ratio = nullptr);

EngelReport verify_engel(const TorusEngelParams& params, std::size_t sample_count, std::uint64_t seed);

struct TwistMeasurement
{
    long long twist = 0;
    double residual = 0;  // |total / pi - twist|
    std::size_t samples = 0; // after refinement
};

/**
 * Lifts the difference of the two line angles along the coordinate loop
 * gamma_i (i = 1, 2, 3) through `base`, refining the sampling until every
 * increment stays below pi/4, and returns the net number of turns.
 */
TwistMeasurement twist_numeric(const TorusEngelParams& a, const TorusEngelParams& b, int loop_index,
                               std::size_t samples = 64, const Point4& base = {});

/// Winding number of t -> <alpha - alpha2, gamma_i(t)> mod 1.
long long development_winding(const std::array<long long, 3>& alpha, const std::array<long long, 3>& alpha2,
                              int loop_index);

/// Bit-reproducible uniform sampling in [0, 1)^4 from a 64-bit Mersenne twister.
std::vector<Point4> sample_points(std::size_t count, std::uint64_t seed);

/// Fixed 12-significant-digit formatting used in all reports.
std::string format_real(double v);

} // namespace fibercov::numeric

#endif
