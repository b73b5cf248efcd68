#pragma once

#include "mixquant/circle_diameter.hpp"
#include "mixquant/closed_form.hpp"
#include "mixquant/errors.hpp"
#include "mixquant/geometry.hpp"
#include "mixquant/measures.hpp"
#include "mixquant/oracle.hpp"
#include "mixquant/quadrature.hpp"
#include "mixquant/rational.hpp"
#include "mixquant/result.hpp"
#include "mixquant/roots.hpp"
#include "mixquant/segment_mixtures.hpp"
