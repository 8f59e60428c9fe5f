#ifndef SDLAB_SDLAB_HPP
#define SDLAB_SDLAB_HPP

// Umbrella header for the Schrodinger-Debye numerical laboratory.

#include "sdlab/audit.hpp"
#include "sdlab/config.hpp"
#include "sdlab/dynamics.hpp"
#include "sdlab/experiments.hpp"
#include "sdlab/fft.hpp"
#include "sdlab/field.hpp"
#include "sdlab/fit.hpp"
#include "sdlab/grid.hpp"
#include "sdlab/io.hpp"
#include "sdlab/norms.hpp"
#include "sdlab/quadrature.hpp"
#include "sdlab/rational.hpp"
#include "sdlab/spacetime.hpp"

#endif
