#pragma once

#include "cubecalc/error.hpp"
#include "cubecalc/field.hpp"
#include "cubecalc/matrix.hpp"
#include "cubecalc/poset.hpp"
#include "cubecalc/rep.hpp"
#include "cubecalc/complex.hpp"
#include "cubecalc/kan.hpp"
#include "cubecalc/cube.hpp"
#include "cubecalc/report.hpp"
#include "cubecalc/serre.hpp"
#include "cubecalc/fixtures.hpp"
#include "cubecalc/suites.hpp"
#include "cubecalc/io.hpp"
