/** @file geochar.hpp @brief Umbrella header. */
#pragma once

#include <geochar/lie_core.hpp>
#include <geochar/compact_char.hpp>
#include <geochar/real_structure.hpp>
#include <geochar/sl2.hpp>
#include <geochar/quadrature.hpp>
#include <geochar/test_function.hpp>
#include <geochar/eigendist.hpp>
#include <geochar/fixed_point.hpp>
#include <geochar/orbit_geom.hpp>
#include <geochar/cycle_integral.hpp>
#include <geochar/coherent.hpp>
#include <geochar/report.hpp>
