#pragma once

// Umbrella header: the term model, the monitor, the spec language and the
// offline tools. The HTTP binding lives in texp/service_http.hpp so that
// including this header does not pull in the HTTP library.

#include "texp/domains.hpp"
#include "texp/epsilon.hpp"
#include "texp/event_type.hpp"
#include "texp/format.hpp"
#include "texp/graph_compare.hpp"
#include "texp/oracle.hpp"
#include "texp/parser.hpp"
#include "texp/program.hpp"
#include "texp/replay.hpp"
#include "texp/semantics.hpp"
#include "texp/service.hpp"
#include "texp/substitution.hpp"
#include "texp/term_store.hpp"
#include "texp/value.hpp"
