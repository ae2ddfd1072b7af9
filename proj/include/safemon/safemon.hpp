#pragma once

#include "safemon/braking_simulator.hpp"
#include "safemon/cli_report.hpp"
#include "safemon/core_metrics.hpp"
#include "safemon/errors.hpp"
#include "safemon/params.hpp"
#include "safemon/records.hpp"
#include "safemon/return_schemes.hpp"
#include "safemon/scenario_generators.hpp"
#include "safemon/trace_model.hpp"
