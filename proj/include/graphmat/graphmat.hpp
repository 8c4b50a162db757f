#pragma once

#include "graphmat/error.hpp"
#include "graphmat/parallel.hpp"
#include "graphmat/shape.hpp"
#include "graphmat/matching.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/rgraph.hpp"
#include "graphmat/index_scheme.hpp"
#include "graphmat/dense.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/jacobi_svd.hpp"
#include "graphmat/spectral.hpp"
#include "graphmat/moment_oracle.hpp"
#include "graphmat/bounds.hpp"
#include "graphmat/witness.hpp"
#include "graphmat/harness.hpp"
#include "graphmat/presets.hpp"
