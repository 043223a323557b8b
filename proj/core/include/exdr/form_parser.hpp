#pragma once

#include <string>
#include <string_view>

#include "exdr/form.hpp"

namespace exdr {

/// Reads a differential form such as "exp(r - exp(r)) dr∧dθ + x^2*dx".
///
/// Scalars: decimal numbers, pi, variables (x1.., r1.., θ1../t1../theta1..;
/// the index may be dropped when there is a single coordinate of that kind),
/// + - * /, integer powers ^, exp, sin, cos, bump(a,b)(t), step(a,b)(t).
/// One-forms: d followed by a variable name (dx, dr2, dθ, dtheta). Products
/// may be written with *, ∧, /\ or by juxtaposition; all of them wedge.
/// Throws ParseError with the position, DegreeOverflow past the dimension.
FormExpr parse_form(std::string_view text, ChartCoordinates coords, const std::string& source = "<form>",
                    int first_line = 1, int first_column = 1);

/// Same grammar restricted to scalars.
Expr parse_scalar(std::string_view text, ChartCoordinates coords, const std::string& source = "<expr>",
                  int first_line = 1, int first_column = 1);

}  // namespace exdr
