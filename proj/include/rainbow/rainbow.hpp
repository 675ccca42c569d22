#ifndef RAINBOW_RAINBOW_HPP
#define RAINBOW_RAINBOW_HPP

#include "rainbow/coloring.hpp"
#include "rainbow/coloring_io.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/error.hpp"
#include "rainbow/report.hpp"
#include "rainbow/search.hpp"
#include "rainbow/store.hpp"
#include "rainbow/version.hpp"

#endif // RAINBOW_RAINBOW_HPP
