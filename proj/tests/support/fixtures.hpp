#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>

#include "egg/graph.hpp"
#include "egg/pruning.hpp"

namespace egg::test {

std::filesystem::path data_dir();      // <repo>/data
std::filesystem::path fixtures_dir();  // <repo>/fixtures
std::string read_file(const std::filesystem::path& p);

/// The shipped FIX1 graph, parsed once.
const EggGraph& fix1();

IdSet ids(std::initializer_list<const char*> list);

struct RandomGraphSpec {
  std::size_t max_rooms = 4;
  std::size_t max_spatial = 30;  // rooms + objects
  std::size_t max_events = 15;
  std::int64_t horizon = 1000;
};

/// A valid graph drawn from `rng`: rooms, objects with non-overlapping containment
/// timelines (sometimes none), and events grounding zero or more objects.
EggGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec = {});

/// Random subset of `from`, each member kept with probability `p`.
IdSet random_subset(std::mt19937_64& rng, const IdSet& from, double p = 0.3);

/// Random closed interval inside [0, horizon].
TimeInterval random_interval(std::mt19937_64& rng, std::int64_t horizon);

/// Same graph rebuilt from its parts in shuffled order.
EggGraph shuffled_copy(const EggGraph& g, std::mt19937_64& rng);

}  // namespace egg::test
