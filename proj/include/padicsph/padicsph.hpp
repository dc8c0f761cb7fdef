#pragma once
// Umbrella header. json_io.hpp is separate because it needs nlohmann/json.

#include "cartan.hpp"
#include "errors.hpp"
#include "exact_field.hpp"
#include "hall_littlewood.hpp"
#include "laurent.hpp"
#include "padic.hpp"
#include "plancherel.hpp"
#include "selfcheck.hpp"
#include "spherical.hpp"
#include "threads.hpp"
#include "weyl.hpp"
