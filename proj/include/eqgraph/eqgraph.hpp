#pragma once

#include "eqgraph/error.hpp"
#include "eqgraph/field.hpp"
#include "eqgraph/graph.hpp"
#include "eqgraph/hamilton.hpp"
#include "eqgraph/report.hpp"
#include "eqgraph/structure.hpp"
#include "eqgraph/survey.hpp"
#include "eqgraph/verify.hpp"
