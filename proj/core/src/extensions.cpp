#include <hosc/extensions.hpp>

#include <hosc/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace hosc {
namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void check_theta(double theta)
{
    if (!std::isfinite(theta) || theta < 0.0 || theta >= std::numbers::pi)
        throw DomainError("theta must lie in [0, pi), got " + std::to_string(theta));
}

template <class... F> struct overload : F... { using F::operator()...; };
template <class... F> overload(F...) -> overload<F...>;

Eigen::MatrixXcd condition_rows(const Extension& ext)
{
    return std::visit(
        overload{
            [](const HalfLine& h) {
                Eigen::MatrixXcd r(1, 2);
                r << std::cos(h.theta), -std::sin(h.theta);
                return r;
            },
            [](const BTheta& b) {
                Eigen::MatrixXcd r(1, 3);
                r << std::numbers::sqrt2 * std::cos(b.theta), std::sin(b.theta), -std::sin(b.theta);
                return r;
            },
            [](const CK& c) { return Eigen::MatrixXcd(ck_rows(k_matrix(c))); }},
        ext);
}

IndefiniteForm form_for(const Extension& ext)
{
    return std::visit(overload{[](const HalfLine& h) { return halfline_form(h.side); },
                                        [](const BTheta&) { return btheta_form(); },
                                        [](const CK&) { return ck_form(); }},
                      ext);
}

NeutralityReport check_rows(const Eigen::MatrixXcd& rows, const IndefiniteForm& form, double tol)
{
    NeutralityReport rep;
    rep.expected_dimension = form.max_neutral_dimension();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    const auto n = static_cast<int>(rows.cols());
    rep.dimension = n - rank;
    const Eigen::MatrixXcd basis = svd.matrixV().rightCols(rep.dimension);

    for (int i = 0; i < rep.dimension; ++i)
        for (int j = 0; j < rep.dimension; ++j) {
            const double v = std::abs(form(basis.col(i), basis.col(j)));
            if (v > rep.max_form_value) {
                rep.max_form_value = v;
                rep.offending = {i, j};
            }
        }
    const bool is_neutral = rep.max_form_value <= tol;
    rep.neutral = is_neutral && rep.dimension == rep.expected_dimension;
    if (!is_neutral) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "form value %.3e on basis pair (%d, %d)", rep.max_form_value,
                      rep.offending.first, rep.offending.second);
        rep.detail = buf;
    } else if (!rep.neutral) {
        rep.detail = "solution space has dimension " + std::to_string(rep.dimension) +
                     ", maximal neutral dimension is " + std::to_string(rep.expected_dimension);
        rep.offending = {-1, -1};
    } else {
        rep.offending = {-1, -1};
    }
    return rep;
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_number(const std::string& key, const std::string& v)
{
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end || !std::isfinite(x))
        throw DomainError("cannot parse value '" + v + "' for key '" + key + "'");
    return x;
}

} // namespace

void validate(const Extension& ext)
{
    std::visit(overload{[](const HalfLine& h) { check_theta(h.theta); },
                                 [](const BTheta& b) { check_theta(b.theta); },
                                 [](const CK& c) {
                                     if (!std::isfinite(c.phi) || !std::isfinite(c.alpha) ||
                                         !std::isfinite(c.beta1) || !std::isfinite(c.beta2))
                                         throw DomainError("CK parameters must be finite");
                                 }},
               ext);
}

Eigen::Matrix2cd k_matrix(const CK& c)
{
    const cd e = std::exp(I * c.phi);
    const double s = std::sin(c.alpha);
    const double co = std::cos(c.alpha);
    Eigen::Matrix2cd k;
    k << e * std::exp(I * c.beta1) * s, e * std::exp(-I * c.beta2) * co,
        e * std::exp(I * c.beta2) * co, -e * std::exp(-I * c.beta1) * s;
    return k;
}

Eigen::Matrix<std::complex<double>, 2, 4> ck_rows(const Eigen::Matrix2cd& k)
{
    Eigen::Matrix<cd, 2, 4> r;
    r << 1.0 - k(0, 0), I * (1.0 + k(0, 0)), I * k(0, 1), -k(0, 1),
        -k(1, 0), I * k(1, 0), I * (1.0 + k(1, 1)), 1.0 - k(1, 1);
    return r;
}

double boundary_residual(const Extension& ext, const BoundaryData& b)
{
    validate(ext);
    return std::visit(
        overload{
            [&](const HalfLine& h) {
                const cd f = h.side == Side::plus ? b.f_plus : b.f_minus;
                const cd df = h.side == Side::plus ? b.df_plus : b.df_minus;
                const double scale = std::max(1.0, std::sqrt(std::norm(f) + std::norm(df)));
                return std::abs(std::cos(h.theta) * f - std::sin(h.theta) * df) / scale;
            },
            [&](const BTheta& bt) {
                const cd f0 = 0.5 * (b.f_plus + b.f_minus);
                const cd cond = std::numbers::sqrt2 * std::cos(bt.theta) * f0 +
                                std::sin(bt.theta) * (b.df_minus - b.df_plus);
                const cd jump = b.f_plus - b.f_minus;
                return std::sqrt(std::norm(cond) + std::norm(jump)) / std::max(1.0, b.norm());
            },
            [&](const CK& c) {
                Eigen::Vector4cd v(b.f_minus, b.df_minus, b.f_plus, b.df_plus);
                return (ck_rows(k_matrix(c)) * v).norm() / std::max(1.0, b.norm());
            }},
        ext);
}

CK ck_from_special(SpecialCase c, double alpha)
{
    const double pi = std::numbers::pi;
    if (c == SpecialCase::classical) return {pi / 2.0, 0.0, 0.0, 0.0};
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= pi)
        throw DomainError("alpha must lie in (0, pi)");
    if (c == SpecialCase::delta) return {alpha + pi / 2.0, alpha, 0.0, 0.0};
    return {pi / 2.0 - alpha, alpha, 0.0, 0.0};
}

BTheta btheta_from_coupling(Coupling c)
{
    if (c.dirichlet) return {0.0};
    return btheta_from_coupling(c.c);
}

BTheta btheta_from_coupling(double c)
{
    if (!std::isfinite(c)) throw DomainError("coupling must be finite; use Coupling::dirichlet_point()");
    return {std::atan2(1.0, std::numbers::sqrt2 * c)};
}

Coupling coupling_from_btheta(double theta)
{
    check_theta(theta);
    if (theta == 0.0) return Coupling::dirichlet_point();
    return Coupling::finite(std::cos(theta) / std::sin(theta) / std::numbers::sqrt2);
}

std::complex<double> IndefiniteForm::operator()(const Eigen::VectorXcd& x,
                                                const Eigen::VectorXcd& y) const
{
    return y.dot(gram * x);
}

int IndefiniteForm::max_neutral_dimension() const
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0, zero = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol) ++pos;
        else if (ev(i) < -tol) ++neg;
        else ++zero;
    }
    return zero + std::min(pos, neg);
}

IndefiniteForm halfline_form(Side side)
{
    Eigen::MatrixXcd g(2, 2);
    g << 0.0, -I, I, 0.0;
    if (side == Side::minus) g = -g;
    return {2, g};
}

IndefiniteForm btheta_form()
{
    Eigen::MatrixXcd g(3, 3);
    g << 0.0, -I, I,
         I, 0.0, 0.0,
         -I, 0.0, 0.0;
    return {3, g};
}

IndefiniteForm ck_form()
{
    Eigen::MatrixXcd g(4, 4);
    g << 0.0, -I, 0.0, 0.0,
         I, 0.0, 0.0, 0.0,
         0.0, 0.0, 0.0, I,
         0.0, 0.0, -I, 0.0;
    return {4, g};
}

NeutralityReport neutral_subspace_check(const Extension& ext, double tol)
{
    validate(ext);
    return check_rows(condition_rows(ext), form_for(ext), tol);
}

NeutralityReport neutral_subspace_check(const Eigen::Matrix2cd& k, double tol)
{
    return check_rows(Eigen::MatrixXcd(ck_rows(k)), ck_form(), tol);
}

std::pair<double, Side> symmetry_map(double theta, Side side)
{
    check_theta(theta);
    const Side other = side == Side::plus ? Side::minus : Side::plus;
    if (theta == 0.0) return {0.0, other};
    return {std::numbers::pi - theta, other};
}

std::string to_string(const Extension& ext)
{
    return std::visit(
        overload{
            [](const HalfLine& h) {
                return std::string("family=") +
                       (h.side == Side::plus ? "halfline-plus" : "halfline-minus") +
                       " theta=" + fmt(h.theta);
            },
            [](const BTheta& b) { return "family=btheta theta=" + fmt(b.theta); },
            [](const CK& c) {
                return "family=ck phi=" + fmt(c.phi) + " alpha=" + fmt(c.alpha) +
                       " beta1=" + fmt(c.beta1) + " beta2=" + fmt(c.beta2);
            }},
        ext);
}

Extension parse_extension(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw DomainError("expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        if (!kv.emplace(key, tok.substr(eq + 1)).second)
            throw DomainError("duplicate key '" + key + "'");
    }
    const auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw DomainError("missing key '" + key + "'");
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    const std::string family = take("family");
    Extension ext;
    if (family == "halfline-plus" || family == "halfline-minus") {
        ext = HalfLine{family == "halfline-plus" ? Side::plus : Side::minus,
                       parse_number("theta", take("theta"))};
    } else if (family == "btheta") {
        ext = BTheta{parse_number("theta", take("theta"))};
    } else if (family == "ck") {
        CK c;
        c.phi = parse_number("phi", take("phi"));
        c.alpha = parse_number("alpha", take("alpha"));
        c.beta1 = parse_number("beta1", take("beta1"));
        c.beta2 = parse_number("beta2", take("beta2"));
        ext = c;
    } else {
        throw DomainError("unknown family '" + family +
                          "' (expected halfline-plus, halfline-minus, btheta or ck)");
    }
    if (!kv.empty()) throw DomainError("unknown key '" + kv.begin()->first + "' for family " + family);
    validate(ext);
    return ext;
}

} // namespace hosc
