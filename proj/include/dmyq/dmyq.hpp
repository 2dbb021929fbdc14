#pragma once

#include "complex_form.hpp"
#include "dynamics.hpp"
#include "engine.hpp"
#include "json_io.hpp"
#include "mapio.hpp"
#include "matrix.hpp"
#include "normal_form.hpp"
#include "poly.hpp"
#include "polymap.hpp"
#include "rational.hpp"
#include "spectra.hpp"
#include "sturm.hpp"
#include "symmetry.hpp"
#include "version.hpp"
