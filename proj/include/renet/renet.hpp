#pragma once

// Everything except the CLI front end.

#include "renet/canonical.hpp"
#include "renet/error.hpp"
#include "renet/firing.hpp"
#include "renet/io.hpp"
#include "renet/label.hpp"
#include "renet/law_suite.hpp"
#include "renet/match.hpp"
#include "renet/morphism.hpp"
#include "renet/multiset.hpp"
#include "renet/net.hpp"
#include "renet/net_gen.hpp"
#include "renet/poset.hpp"
#include "renet/poset_construct.hpp"
#include "renet/poset_gen.hpp"
#include "renet/poset_oracle.hpp"
#include "renet/rule.hpp"
#include "renet/rule_gen.hpp"
#include "renet/state_space.hpp"
#include "renet/transform.hpp"
