#pragma once

namespace mildflow {

// Hypothesis windows of the estimates. Each check throws ValidationError
// whose message spells out the violated inequality.

/// q > 1, p > 1, 0 <= s/d < min(1/p, 1/q), 1/p + 1/q < 1 + s/d.
void check_product_window(int dim, double p, double q, double s);
/// Product output exponent: 1/r = 1/p + 1/q - s/d.
double product_output_exponent(int dim, double p, double q, double s);

/// s >= 0, q > 1, s/d < 1/q <= (s+1)/d.
void check_base_window(int dim, double s, double q);

/// Base window plus s/d < 1/q~ < min(1/2 + s/(2d), 1/q).
void check_bilinear_window(int dim, double s, double q, double q_tilde);

/// Base window plus (1/q + s/d)/2 < 1/q~ < min(1/2 + s/(2d), 1/q).
/// Governs both the target-space bilinear bound and the existence theorem.
void check_existence_window(int dim, double s, double q, double q_tilde);

/// s >= 0, q > 1, s/d < 1/q~ < 1/q.
void check_embedding_window(int dim, double s, double q, double q_tilde);

/// Critical index: 1 < q <= d and s = d/q - 1 (within 1e-12).
bool is_critical_index(int dim, double s, double q);

}  // namespace mildflow
