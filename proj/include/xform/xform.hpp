#pragma once

#include "xform/error.hpp"
#include "xform/pattern.hpp"
#include "xform/pattern_io.hpp"
#include "xform/ast.hpp"
#include "xform/parser.hpp"
#include "xform/synthesis.hpp"
#include "xform/machine.hpp"
