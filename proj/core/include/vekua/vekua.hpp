#pragma once

#include "vekua/bicomplex.hpp"
#include "vekua/calculus.hpp"
#include "vekua/error.hpp"
#include "vekua/expr.hpp"
#include "vekua/field.hpp"
#include "vekua/formal_power.hpp"
#include "vekua/jet.hpp"
#include "vekua/parallel.hpp"
#include "vekua/pseudoanalytic.hpp"
#include "vekua/quadrature.hpp"
#include "vekua/quat3d.hpp"
#include "vekua/solver.hpp"
#include "vekua/transforms.hpp"
