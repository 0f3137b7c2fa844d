#pragma once

#include "mmdg/errors.hpp"
#include "mmdg/quadrature_basis.hpp"
#include "mmdg/velocity_grid.hpp"
#include "mmdg/kinetic_core.hpp"
#include "mmdg/dg_space.hpp"
#include "mmdg/schemes.hpp"
#include "mmdg/limiter.hpp"
#include "mmdg/imex.hpp"
#include "mmdg/ns_reference.hpp"
#include "mmdg/harness/riemann.hpp"
#include "mmdg/harness/metrics.hpp"
#include "mmdg/harness/cases.hpp"
#include "mmdg/harness/run.hpp"
#include "mmdg/harness/csv.hpp"
#include "mmdg/harness/studies.hpp"
