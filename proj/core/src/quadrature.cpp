#include <hosc/quadrature.hpp>

#include <hosc/error.hpp>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

namespace hosc {
namespace {

std::string format_g(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Trampoline {
    const std::function<double(double)>* f;
    std::exception_ptr error;
};

// Exceptions must not unwind through the C integrator: they are parked and
// the integrand reports NaN until the call returns.
double call(double x, void* p)
{
    auto* t = static_cast<Trampoline*>(p);
    if (t->error) return std::numeric_limits<double>::quiet_NaN();
    try {
        return (*t->f)(x);
    } catch (...) {
        t->error = std::current_exception();
        return std::numeric_limits<double>::quiet_NaN();
    }
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

} // namespace

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (!(cutoff_margin > 0.0)) throw DomainError("cutoff_margin must be positive");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& qc)
{
    qc.validate();
    if (a == b) return {};

    static std::once_flag handler_once;
    std::call_once(handler_once, [] { gsl_set_error_handler_off(); });

    const auto limit = static_cast<std::size_t>(qc.max_subdivisions);
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(limit));
    if (!ws) throw NumericError("could not allocate quadrature workspace");

    Trampoline t{&f, nullptr};
    gsl_function F{&call, &t};
    double value = 0.0;
    double err = 0.0;
    const int status = gsl_integration_qag(&F, a, b, qc.abs_tol, qc.rel_tol, limit,
                                           GSL_INTEG_GAUSS21, ws.get(), &value, &err);
    if (t.error) std::rethrow_exception(t.error);
    if (!std::isfinite(value))
        throw NumericError("quadrature produced a non-finite value on [" + format_g(a) + ", " +
                           format_g(b) + "]");
    if (status != GSL_SUCCESS)
        throw NumericError(std::string("quadrature failed: ") + gsl_strerror(status) +
                           " (error " + format_g(err) + " on [" + format_g(a) + ", " +
                           format_g(b) + "])");
    return {value, err};
}

} // namespace hosc
