#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cubesep/construction.hpp"
#include "cubesep/development.hpp"
#include "cubesep/graph.hpp"
#include "cubesep/labeled_complex.hpp"
#include "cubesep/normal_form.hpp"
#include "cubesep/separability.hpp"

using namespace cubesep;

namespace {

DefiningGraph path_graph() {
  return DefiningGraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

Word random_word(const DefiningGraph& g, std::mt19937_64& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back(Letter(static_cast<int>(rng() % g.size()), rng() % 2 ? 1 : -1));
  return w;
}

void bm_normalize(benchmark::State& state) {
  DefiningGraph g = path_graph();
  std::mt19937_64 rng(7);
  std::vector<Word> words;
  for (int i = 0; i < 256; ++i)
    words.push_back(random_word(g, rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(g, words[i % words.size()]));
    ++i;
  }
}
BENCHMARK(bm_normalize)->Arg(8)->Arg(32)->Arg(128);

void bm_hull(benchmark::State& state) {
  DefiningGraph g = path_graph();
  std::mt19937_64 rng(8);
  std::vector<std::vector<NormalForm>> point_sets;
  for (int i = 0; i < 64; ++i) {
    std::vector<NormalForm> pts;
    for (int k = 0; k < 3; ++k)
      pts.push_back(normalize(g, random_word(g, rng, static_cast<int>(state.range(0)))));
    point_sets.push_back(pts);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DevelopedComplex::hull(g, point_sets[i % point_sets.size()]));
    ++i;
  }
}
BENCHMARK(bm_hull)->Arg(4)->Arg(6)->Arg(8);

void bm_completion(benchmark::State& state) {
  DefiningGraph g({"v"}, {});
  int n = static_cast<int>(state.range(0));
  LabeledComplex z(g, n, 0);
  for (int i = 0; i + 1 < n; ++i) z.add_edge(i, 0, i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_completion(z));
}
BENCHMARK(bm_completion)->Arg(8)->Arg(64)->Arg(256);

void bm_theorem_a(benchmark::State& state) {
  DefiningGraph g({"v", "w"}, {{"v", "w"}});
  LabeledComplex z(g, 3, 0);
  for (int i = 0; i < 3; ++i) z.add_edge(i, 0, (i + 1) % 3);
  NormalForm target = normalize(
      g, Word{Letter(0, 1), Letter(0, 1), Letter(0, 1), Letter(0, 1),
              Letter(1, 1)});
  for (auto _ : state) benchmark::DoNotOptimize(theorem_a(z, target));
}
BENCHMARK(bm_theorem_a);

void bm_separate(benchmark::State& state) {
  DefiningGraph g({"a", "b"}, {});
  LabeledComplex z(g, 1, 0);
  z.add_edge(0, 0, 0);
  NormalForm target =
      normalize(g, Word{Letter(1, 1), Letter(0, 1), Letter(1, -1)});
  for (auto _ : state) benchmark::DoNotOptimize(separate(z, target));
}
BENCHMARK(bm_separate);

}  // namespace

BENCHMARK_MAIN();
