#pragma once

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "group.hpp"
#include "catalog.hpp"
#include "algebra.hpp"
#include "blocks.hpp"
#include "pointed.hpp"
#include "bimods.hpp"
#include "serialize.hpp"
#include "suites.hpp"
