#pragma once

// Umbrella header for the half-space trace-inequality verification toolkit.

#include "onofri/asymptotics.hpp"
#include "onofri/core.hpp"
#include "onofri/expr.hpp"
#include "onofri/fields.hpp"
#include "onofri/functionals.hpp"
#include "onofri/kernels.hpp"
#include "onofri/limit_study.hpp"
#include "onofri/pde_checks.hpp"
#include "onofri/quadrature.hpp"
#include "onofri/report.hpp"
#include "onofri/special.hpp"
#include "onofri/test_fields.hpp"
