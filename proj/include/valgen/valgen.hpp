#pragma once

#include "valgen/error.hpp"
#include "valgen/values.hpp"
#include "valgen/field.hpp"
#include "valgen/poly.hpp"
#include "valgen/series.hpp"
#include "valgen/parse.hpp"
#include "valgen/genseq.hpp"
#include "valgen/transforms.hpp"
#include "valgen/monomial.hpp"
#include "valgen/towers.hpp"
#include "valgen/report.hpp"
