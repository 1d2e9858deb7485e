#include "mildflow/windows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mildflow/errors.hpp"

namespace mildflow {

namespace {

void require(bool ok, const std::string& inequality, double lhs, double rhs) {
    if (ok) return;
    std::ostringstream msg;
    msg.precision(6);
    msg << "exponent window violated: " << inequality << " (" << lhs << " vs " << rhs << ")";
    throw ValidationError(msg.str());
}

void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
}

}  // namespace

void check_product_window(int dim, double p, double q, double s) {
    check_dim(dim);
    const double d = dim;
    require(p > 1.0, "p > 1", p, 1.0);
    require(q > 1.0, "q > 1", q, 1.0);
    require(s >= 0.0, "s >= 0", s, 0.0);
    require(s / d < 1.0 / p, "s/d < 1/p", s / d, 1.0 / p);
    require(s / d < 1.0 / q, "s/d < 1/q", s / d, 1.0 / q);
    require(1.0 / p + 1.0 / q < 1.0 + s / d, "1/p + 1/q < 1 + s/d", 1.0 / p + 1.0 / q, 1.0 + s / d);
}

double product_output_exponent(int dim, double p, double q, double s) {
    check_product_window(dim, p, q, s);
    return 1.0 / (1.0 / p + 1.0 / q - s / dim);
}

void check_base_window(int dim, double s, double q) {
    check_dim(dim);
    const double d = dim;
    require(s >= 0.0, "s >= 0", s, 0.0);
    require(q > 1.0, "q > 1", q, 1.0);
    require(s / d < 1.0 / q, "s/d < 1/q", s / d, 1.0 / q);
    require(1.0 / q <= (s + 1.0) / d, "1/q <= (s+1)/d", 1.0 / q, (s + 1.0) / d);
}

void check_bilinear_window(int dim, double s, double q, double q_tilde) {
    check_base_window(dim, s, q);
    const double d = dim;
    const double inv = 1.0 / q_tilde;
    require(s / d < inv, "s/d < 1/q~", s / d, inv);
    require(inv < 0.5 + s / (2.0 * d), "1/q~ < 1/2 + s/(2d)", inv, 0.5 + s / (2.0 * d));
    require(inv < 1.0 / q, "1/q~ < 1/q", inv, 1.0 / q);
}

void check_existence_window(int dim, double s, double q, double q_tilde) {
    check_base_window(dim, s, q);
    const double d = dim;
    const double inv = 1.0 / q_tilde;
    require(0.5 * (1.0 / q + s / d) < inv, "(1/q + s/d)/2 < 1/q~", 0.5 * (1.0 / q + s / d), inv);
    require(inv < 0.5 + s / (2.0 * d), "1/q~ < 1/2 + s/(2d)", inv, 0.5 + s / (2.0 * d));
    require(inv < 1.0 / q, "1/q~ < 1/q", inv, 1.0 / q);
}

void check_embedding_window(int dim, double s, double q, double q_tilde) {
    check_dim(dim);
    const double d = dim;
    require(s >= 0.0, "s >= 0", s, 0.0);
    require(q > 1.0, "q > 1", q, 1.0);
    require(s / d < 1.0 / q_tilde, "s/d < 1/q~", s / d, 1.0 / q_tilde);
    require(1.0 / q_tilde < 1.0 / q, "1/q~ < 1/q", 1.0 / q_tilde, 1.0 / q);
}

bool is_critical_index(int dim, double s, double q) {
    return q > 1.0 && q <= dim && std::abs(s - (dim / q - 1.0)) <= 1e-12;
}

}  // namespace mildflow
