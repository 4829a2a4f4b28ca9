#pragma once

#include "gfun/errors.hpp"
#include "gfun/series.hpp"
#include "gfun/series_io.hpp"
#include "gfun/operators.hpp"
#include "gfun/zoo.hpp"
#include "gfun/membership.hpp"
#include "gfun/lemma_lab.hpp"
#include "gfun/harness.hpp"
#include "gfun/report_json.hpp"
