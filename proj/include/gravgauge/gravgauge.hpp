#pragma once

#include "gravgauge/catalog.hpp"
#include "gravgauge/connection.hpp"
#include "gravgauge/correspondence.hpp"
#include "gravgauge/curvature.hpp"
#include "gravgauge/errors.hpp"
#include "gravgauge/fields.hpp"
#include "gravgauge/frame.hpp"
#include "gravgauge/gauge.hpp"
#include "gravgauge/oracle.hpp"
#include "gravgauge/palatini.hpp"
#include "gravgauge/pseudotranslation.hpp"
#include "gravgauge/random.hpp"
#include "gravgauge/spencer.hpp"
#include "gravgauge/verify.hpp"
