#pragma once

#include "wci/core.hpp"
#include "wci/enumerator.hpp"
#include "wci/error.hpp"
#include "wci/filters.hpp"
#include "wci/io.hpp"
#include "wci/transforms.hpp"
#include "wci/verify.hpp"
