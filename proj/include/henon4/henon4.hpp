#pragma once

#include "henon4/errors.hpp"
#include "henon4/quadrature.hpp"
#include "henon4/profile.hpp"
#include "henon4/radial.hpp"
#include "henon4/rearrangement.hpp"
#include "henon4/log_transform.hpp"
#include "henon4/moser.hpp"
#include "henon4/corpus.hpp"
#include "henon4/symmetry.hpp"
#include "henon4/report.hpp"
#include "henon4/suites.hpp"
