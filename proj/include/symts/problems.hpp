#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symts/problem.hpp"

namespace symts {

/// Source problem on (0,1)^3: -Lap u - u/|x| + x1 x2 x3 u = f with
/// u = 2 x1 x2 x3 (1-x1)(1-x2)(1-x3) exp(x1+x2+x3). The potential is singular
/// at the origin, a boundary corner.
ProblemDef example1();

/// Source problem on (1,2)^3 with a full variable diffusion matrix
/// (exp(x_i) on the diagonal, ones elsewhere), b = (0.001, 0.001, 0.001),
/// V = 1, and u = prod (1-x_i)(2-x_i) sin(sqrt(x1 x2 x3)) exp(x1+x2+x3).
ProblemDef example2();

/// Harmonic oscillator (-Lap/2 + r^2/2) u = lambda u truncated to [-5,5]^3
/// with zero Dirichlet data. Exact pair on R^3: (1.5, pi^{-3/4} exp(-r^2/2)).
ProblemDef example3();

/// -Lap u = 2 pi^2 u on (0,1)^2 with u = sin(pi x1) sin(pi x2); doubles as
/// the eigenproblem with lambda = 2 pi^2.
ProblemDef poisson2d_sym();

/// Looks up a built-in problem by its command-line key
/// (ex1, ex2, ex3, poisson2d). Throws std::invalid_argument otherwise.
ProblemDef problem_by_key(std::string_view key);

std::vector<std::string> problem_keys();

}  // namespace symts
