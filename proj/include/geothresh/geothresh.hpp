#ifndef GEOTHRESH_GEOTHRESH_HPP
#define GEOTHRESH_GEOTHRESH_HPP

#include "geothresh/density.hpp"
#include "geothresh/errors.hpp"
#include "geothresh/expectation.hpp"
#include "geothresh/experiments.hpp"
#include "geothresh/geometry.hpp"
#include "geothresh/graph.hpp"
#include "geothresh/io.hpp"
#include "geothresh/oracle.hpp"
#include "geothresh/parallel.hpp"
#include "geothresh/quadrature.hpp"
#include "geothresh/rng.hpp"
#include "geothresh/spatial.hpp"
#include "geothresh/stats.hpp"
#include "geothresh/theory.hpp"
#include "geothresh/thresholds.hpp"

#endif  // GEOTHRESH_GEOTHRESH_HPP
