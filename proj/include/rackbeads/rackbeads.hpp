#pragma once

#include "cochain.hpp"
#include "cocycle.hpp"
#include "corpus.hpp"
#include "diagram.hpp"
#include "diagram_codes.hpp"
#include "invariants.hpp"
#include "labeling.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "polynomial.hpp"
#include "presentation.hpp"
#include "rack.hpp"
#include "report.hpp"
#include "search.hpp"
#include "text_io.hpp"
