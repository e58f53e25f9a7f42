#pragma once

#include "ball.hpp"
#include "bounds.hpp"
#include "continued_fraction.hpp"
#include "error.hpp"
#include "lucas.hpp"
#include "pipeline.hpp"
#include "reduction.hpp"
#include "report.hpp"
