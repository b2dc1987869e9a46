#include "fibercov/engel_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "fibercov/error.hpp"

namespace fibercov::numeric {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

double wrap_unit(double v)
{
    double w = v - std::floor(v);
    return w >= 1.0 ? 0.0 : w;
}

// Wraps an angle difference of lines into (-pi/2, pi/2].
double wrap_half_turn(double d)
{
    d = std::remainder(d, kPi);
    if (d <= -kPi / 2)
        d += kPi;
    return d;
}

Vec4 contact_direction(double z)
{
    return {std::cos(kTwoPi * z), std::sin(kTwoPi * z), 0, 0};
}

Vec4 e_theta()
{
    return {0, 0, 0, 1};
}

Vec4 grad_angle(const TorusEngelParams& p)
{
    return kPi * Vec4(double(p.alpha[0]), double(p.alpha[1]), double(p.alpha[2]), double(p.n));
}

// Closed-form B1 = [d_theta, W] = pi n dW/da.
Vec4 first_bracket(const TorusEngelParams& params, const Vec4& q)
{
    const double a = plane_angle(params, q);
    const double C = std::cos(kTwoPi * q[2]), S = std::sin(kTwoPi * q[2]);
    return kPi * double(params.n) * Vec4(std::cos(a) * C, std::cos(a) * S, -std::sin(a), 0);
}

template <typename Field>
Eigen::Matrix4d jacobian_fd(const Field& f, const Vec4& q, double h)
{
    Eigen::Matrix4d J;
    for (int k = 0; k < 4; ++k)
    {
        Vec4 e = Vec4::Zero();
        e[k] = h;
        J.col(k) = (-f(q + 2 * e) + 8 * f(q + e) - 8 * f(q - e) + f(q - 2 * e)) / (12 * h);
    }
    return J;
}

} // namespace

Point4 Point4::wrapped(double x, double y, double z, double theta)
{
    return {wrap_unit(x), wrap_unit(y), wrap_unit(z), wrap_unit(theta)};
}

double contact_defect(const Point4& p)
{
    // alpha = A . (dx, dy, dz) with A = (sin 2 pi z, cos 2 pi z, 0); alpha ^ d alpha = A . curl A.
    const double s = std::sin(kTwoPi * p.z), c = std::cos(kTwoPi * p.z);
    const Eigen::Vector3d A(s, c, 0);
    const double dA1_dz = kTwoPi * c, dA2_dz = -kTwoPi * s;
    const Eigen::Vector3d curl(0 - dA2_dz, dA1_dz - 0, 0 - 0);
    return A.dot(curl);
}

double plane_angle(const TorusEngelParams& params, const Vec4& q)
{
    return grad_angle(params).dot(q);
}

Vec4 plane_vector(const TorusEngelParams& params, const Vec4& q)
{
    const double a = plane_angle(params, q);
    return std::cos(a) * Vec4(0, 0, 1, 0) + std::sin(a) * contact_direction(q[2]);
}

EngelFrame engel_frame(const TorusEngelParams& params, const Point4& point)
{
    const Vec4 q = point.vec();
    const double a = plane_angle(params, q);
    const double c = std::cos(a), s = std::sin(a);
    const double C = std::cos(kTwoPi * q[2]), S = std::sin(kTwoPi * q[2]);
    const double pn = kPi * double(params.n);
    const Vec4 grad = grad_angle(params);

    EngelFrame F;
    F.d_theta = e_theta();
    F.W = Vec4(s * C, s * S, c, 0);
    const Vec4 dW_da(c * C, c * S, -s, 0);
    const Vec4 dW_dz(-kTwoPi * s * S, kTwoPi * s * C, 0, 0);
    F.B1 = pn * dW_da;
    const Vec4 dB1_da = -pn * F.W;
    const Vec4 dB1_dz = pn * Vec4(-kTwoPi * c * S, kTwoPi * c * C, 0, 0);

    // [W, B1] = D B1 . W - D W . B1, each Jacobian split into the a- and explicit z-dependence.
    F.B2 = dB1_da * grad.dot(F.W) + dB1_dz * F.W[2] - dW_da * grad.dot(F.B1) - dW_dz * F.B1[2];
    return F;
}

EngelFrame engel_frame_fd(const TorusEngelParams& params, const Point4& point, double h)
{
    const Vec4 q = point.vec();
    auto W = [&](const Vec4& v) { return plane_vector(params, v); };
    auto B1 = [&](const Vec4& v) { return first_bracket(params, v); };
    const Eigen::Matrix4d JW = jacobian_fd(W, q, h);
    const Eigen::Matrix4d JB1 = jacobian_fd(B1, q, h);

    EngelFrame F;
    F.d_theta = e_theta();
    F.W = W(q);
    // d_theta is constant, so [d_theta, W] = DW . d_theta.
    F.B1 = JW * F.d_theta;
    F.B2 = JB1 * F.W - JW * B1(q);
    return F;
}

double bracket_deviation(const TorusEngelParams& params, const Point4& q, double h)
{
    const EngelFrame a = engel_frame(params, q);
    const EngelFrame f = engel_frame_fd(params, q, h);
    return std::max((a.B1 - f.B1).cwiseAbs().maxCoeff(), (a.B2 - f.B2).cwiseAbs().maxCoeff());
}

int numeric_rank(const Eigen::MatrixXd& M, double* sv_ratio)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double largest = sv.size() ? sv[0] : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > kRankTolerance * largest)
            ++rank;
    if (sv_ratio)
        *sv_ratio = largest > 0 ? sv[sv.size() - 1] / largest : 0.0;
    return rank;
}

std::vector<Point4> sample_points(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
    std::vector<Point4> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        Point4 p;
        p.x = unit();
        p.y = unit();
        p.z = unit();
        p.theta = unit();
        pts.push_back(p);
    }
    return pts;
}

EngelReport verify_engel(const TorusEngelParams& params, std::size_t sample_count, std::uint64_t seed)
{
    if (sample_count < 1)
        throw Error("verify_engel: sample_count must be >= 1");
    EngelReport report;
    report.pass = true;
    report.min_sv_ratio = std::numeric_limits<double>::infinity();
    for (const Point4& q : sample_points(sample_count, seed))
    {
        const EngelFrame F = engel_frame(params, q);
        Eigen::Matrix<double, 4, 4> M;
        M << F.d_theta, F.W, F.B1, F.B2;
        PointReport pr;
        for (int stage = 0; stage < 3; ++stage)
        {
            pr.ranks[stage] = numeric_rank(M.leftCols(stage + 2), &pr.sv_ratio[stage]);
            report.min_sv_ratio = std::min(report.min_sv_ratio, pr.sv_ratio[stage]);
        }
        if (pr.ranks != std::array<int, 3>{2, 3, 4})
            report.pass = false;
        report.points.push_back(pr);
    }
    return report;
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string EngelReport::to_text() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const auto& p = points[i];
        os << "point " << i << " ranks " << p.ranks[0] << ' ' << p.ranks[1] << ' ' << p.ranks[2] << " sv2 "
           << format_real(p.sv_ratio[0]) << " sv3 " << format_real(p.sv_ratio[1]) << " sv4 "
           << format_real(p.sv_ratio[2]) << '\n';
    }
    os << "engel: " << (pass ? "PASS" : "FAIL") << " min_sv_ratio " << format_real(min_sv_ratio) << '\n';
    return os.str();
}

TwistMeasurement twist_numeric(const TorusEngelParams& a, const TorusEngelParams& b, int loop_index,
                               std::size_t samples, const Point4& base)
{
    if (a.n != b.n)
        throw Error("twist_numeric: the two structures have different twisting numbers");
    if (loop_index < 1 || loop_index > 3)
        throw Error("twist_numeric: loop index must be 1, 2 or 3");
    if (samples < 64)
        throw Error("twist_numeric: at least 64 samples are required");

    const Vec4 origin = base.vec();
    Vec4 dir = Vec4::Zero();
    dir[loop_index - 1] = 1.0;

    // Angle of the line spanned by W inside the contact plane, basis (d_z, V).
    auto line_angle = [](const TorusEngelParams& p, const Vec4& q) {
        const Vec4 W = plane_vector(p, q);
        return std::atan2(W.dot(contact_direction(q[2])), W[2]);
    };
    auto difference = [&](double t) {
        const Vec4 q = origin + t * dir;
        return line_angle(a, q) - line_angle(b, q);
    };

    constexpr std::size_t kMaxSamples = std::size_t(1) << 22;
    for (std::size_t N = samples; N <= kMaxSamples; N *= 2)
    {
        double total = 0;
        bool refined = true;
        double prev = difference(0.0);
        for (std::size_t k = 1; k <= N; ++k)
        {
            const double cur = difference(double(k) / double(N));
            const double inc = wrap_half_turn(cur - prev);
            if (std::abs(inc) >= kPi / 4)
            {
                refined = false;
                break;
            }
            total += inc;
            prev = cur;
        }
        if (!refined)
            continue;
        TwistMeasurement m;
        const double turns = total / kPi;
        m.twist = std::llround(turns);
        m.residual = std::abs(turns - double(m.twist));
        m.samples = N;
        return m;
    }
    throw Error("twist_numeric: angle unwrapping did not converge");
}

long long development_winding(const std::array<long long, 3>& alpha, const std::array<long long, 3>& alpha2,
                              int loop_index)
{
    if (loop_index < 1 || loop_index > 3)
        throw Error("development_winding: loop index must be 1, 2 or 3");
    std::array<double, 3> diff{};
    double spread = 1;
    for (int j = 0; j < 3; ++j)
    {
        diff[j] = double(alpha[j] - alpha2[j]);
        spread += std::abs(diff[j]);
    }
    // The circle-valued map t -> <diff, gamma_i(t)> mod 1, lifted through samples.
    auto circle_value = [&](double t) {
        std::array<double, 3> p{0, 0, 0};
        p[loop_index - 1] = t;
        return wrap_unit(diff[0] * p[0] + diff[1] * p[1] + diff[2] * p[2]);
    };
    const std::size_t N = static_cast<std::size_t>(4 * spread);
    double total = 0;
    double prev = circle_value(0.0);
    for (std::size_t k = 1; k <= N; ++k)
    {
        const double cur = circle_value(double(k) / double(N));
        total += std::remainder(cur - prev, 1.0);
        prev = cur;
    }
    return std::llround(total);
}

} // namespace fibercov::numeric
