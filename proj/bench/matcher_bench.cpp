// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference scan vs the indexed matcher, and serial vs OpenMP verify.
// Database sizes come from the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>

#include "fixtures.hpp"
#include "hallucite/matcher.hpp"

using namespace hallucite;
using namespace hallucite::testing;

namespace {

struct Fixture {
  TitleRows rows;
  BibDatabase db;
  std::vector<std::string> hits;
  std::vector<std::string> near;
  std::vector<std::string> misses;
};

const Fixture& fixture(std::size_t size) {
  static std::map<std::size_t, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[size];
  if (!slot) {
    slot = std::make_unique<Fixture>();
    slot->rows = make_title_db(size, 7, "db");
    slot->db = BibDatabase::from_titles("bench", slot->rows);
    Corpus corpus(8);
    for (int i = 0; i < 32; ++i) {
      slot->hits.push_back(slot->rows[corpus.uniform(size)].second);
      std::string typo = slot->hits.back();
      typo[typo.size() / 2] = typo[typo.size() / 2] == 'q' ? 'x' : 'q';
      slot->near.push_back(typo);
      slot->misses.push_back(corpus.title() + " " + corpus.title());
    }
  }
  return *slot;
}

std::vector<Citation> citations(const Fixture& f) {
  std::vector<Citation> out;
  for (std::size_t i = 0; i < f.hits.size(); ++i) {
    for (const auto* t : {&f.hits[i], &f.misses[i]}) {
      Citation c;
      c.raw_text = *t;
      c.title = *t;
      c.status = CitationStatus::recognized;
      out.push_back(c);
    }
  }
  return out;
}

void BM_ReferenceMatch(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const MatcherConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::find_best_match(f.hits[i++ % f.hits.size()], f.db, cfg));
  }
}

void BM_IndexedHit(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const MatcherConfig cfg;
  omp_set_num_threads(1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_best_match(f.hits[i++ % f.hits.size()], f.db, cfg));
}

void BM_IndexedNearHit(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const MatcherConfig cfg;
  omp_set_num_threads(1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_best_match(f.near[i++ % f.near.size()], f.db, cfg));
}

void BM_IndexedMiss(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const MatcherConfig cfg;
  omp_set_num_threads(1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_best_match(f.misses[i++ % f.misses.size()], f.db, cfg));
}

void BM_VerifySerialReference(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const auto input = citations(f);
  const MatcherConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(reference::verify(input, f.db, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(input.size()));
}

void BM_VerifyParallel(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const auto input = citations(f);
  const MatcherConfig cfg;
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(input, f.db, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(input.size()));
  state.counters["threads"] = static_cast<double>(state.range(1));
}

}  // namespace

BENCHMARK(BM_ReferenceMatch)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexedHit)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexedNearHit)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndexedMiss)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerialReference)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)
    ->Apply([](benchmark::internal::Benchmark* b) {
      for (std::int64_t size : {10'000, 100'000}) {
        b->Args({size, 1});
        if (omp_get_max_threads() > 1) b->Args({size, omp_get_max_threads()});
      }
    })
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
