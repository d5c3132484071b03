#pragma once

#include "vamoma/errors.hpp"
#include "vamoma/quadrature.hpp"
#include "vamoma/mesh.hpp"
#include "vamoma/hermite.hpp"
#include "vamoma/problem.hpp"
#include "vamoma/banded.hpp"
#include "vamoma/assembly.hpp"
#include "vamoma/solver.hpp"
#include "vamoma/reconstruction.hpp"
#include "vamoma/analysis.hpp"
