#pragma once

#include "arith.hpp"
#include "brauer.hpp"
#include "catalog.hpp"
#include "cohomology.hpp"
#include "fixture.hpp"
#include "geometry.hpp"
#include "linalg.hpp"
#include "localpoints.hpp"
#include "poly.hpp"
#include "search.hpp"
#include "upoly.hpp"
#include "verify.hpp"
