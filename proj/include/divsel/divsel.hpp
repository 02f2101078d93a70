#pragma once

#include "divsel/arith.hpp"
#include "divsel/brauer.hpp"
#include "divsel/class_fields.hpp"
#include "divsel/commands.hpp"
#include "divsel/decision.hpp"
#include "divsel/embeddings.hpp"
#include "divsel/enumeration.hpp"
#include "divsel/places.hpp"
#include "divsel/problem_file.hpp"
#include "divsel/qmod1.hpp"
#include "divsel/selectivity.hpp"
