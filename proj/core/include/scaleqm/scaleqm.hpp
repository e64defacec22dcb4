#pragma once

#include "scaleqm/differentiation.hpp"
#include "scaleqm/error.hpp"
#include "scaleqm/fourier.hpp"
#include "scaleqm/grid.hpp"
#include "scaleqm/hamiltonian.hpp"
#include "scaleqm/multi_particle.hpp"
#include "scaleqm/scaled_hilbert.hpp"
#include "scaleqm/scaled_numbers.hpp"
#include "scaleqm/scaling_field.hpp"
#include "scaleqm/single_particle.hpp"
#include "scaleqm/types.hpp"
