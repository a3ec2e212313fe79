#pragma once

#include "funk/body.hpp"
#include "funk/body_json.hpp"
#include "funk/emit.hpp"
#include "funk/finsler.hpp"
#include "funk/funk_metric.hpp"
#include "funk/gauge.hpp"
#include "funk/rng.hpp"
#include "funk/vec.hpp"
#include "funk/verify.hpp"
