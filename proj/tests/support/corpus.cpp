// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus.hpp"

#include <cctype>
#include <set>

#include "hallucite/similarity.hpp"

namespace hallucite::testing {

namespace {

const std::vector<std::string>& nouns() {
  static const std::vector<std::string> v = {
      "attention", "transformers", "embeddings", "parsing", "translation", "summarization", "retrieval",
      "alignment", "representations", "language", "models", "networks", "graphs", "kernels", "grammars",
      "corpora", "benchmarks", "agents", "dialogue", "segmentation", "tagging", "entities", "relations",
      "inference", "reasoning", "supervision", "pretraining", "distillation", "adapters", "decoding",
      "tokenization", "morphology", "syntax", "semantics", "discourse", "coreference", "sentiment",
      "hallucination", "citations", "evidence", "claims", "questions", "answers", "documents", "passages",
      "queries", "rankings", "metrics", "evaluation", "robustness", "fairness", "bias", "privacy",
      "compression", "quantization", "sparsity", "scaling", "curricula", "augmentation", "paraphrases",
      "lexicons", "ontologies", "schemas", "programs", "proofs", "tables", "images", "speech", "audio",
      "video", "captions", "instructions", "preferences", "rewards", "policies", "simulators", "trajectories",
      "clusters", "topics", "trees", "lattices", "automata", "transducers", "features", "gradients",
      "optimizers", "priors", "posteriors", "ensembles", "experts", "routers", "memories", "caches",
  };
  return v;
}

const std::vector<std::string>& adjectives() {
  static const std::vector<std::string> v = {
      "neural", "contextual", "multilingual", "low-resource", "efficient", "robust", "scalable", "sparse",
      "dense", "hierarchical", "structured", "unsupervised", "semi-supervised", "adversarial", "causal",
      "probabilistic", "latent", "discrete", "continuous", "generative", "discriminative", "compositional",
      "cross-lingual", "domain-specific", "open-domain", "long-context", "interpretable", "faithful",
      "factual", "grounded", "multimodal", "incremental", "streaming", "parallel", "distributed",
      "lightweight", "zero-shot", "few-shot", "self-supervised", "contrastive", "bilingual", "temporal",
      "spatial", "syntactic", "semantic", "pragmatic", "statistical", "symbolic", "hybrid", "modular",
  };
  return v;
}

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v = {
      "Learning", "Improving", "Revisiting", "Understanding", "Scaling", "Measuring", "Detecting",
      "Explaining", "Evaluating", "Training", "Adapting", "Probing", "Rethinking", "Towards", "Exploring",
      "Benchmarking", "Characterizing", "Generating", "Aligning", "Compressing", "Distilling", "Predicting",
  };
  return v;
}

const std::vector<std::string>& connectors() {
  static const std::vector<std::string> v = {"for", "with", "via", "from", "in", "under", "beyond", "without",
                                             "across", "through", "over", "using"};
  return v;
}

const std::vector<std::string>& first_names() {
  static const std::vector<std::string> v = {
      "Alice", "Bruno", "Chen", "Dana", "Elif", "Farid", "Greta", "Hiro", "Ines", "Jonas", "Karim", "Lena",
      "Mateo", "Nadia", "Oscar", "Priya", "Quentin", "Rosa", "Sven", "Tariq", "Uma", "Viktor", "Wei",
      "Ximena", "Yusuf", "Zoe", "Andr\xC3\xA9", "Bj\xC3\xB6rn", "C\xC3\xA9line", "Jos\xC3\xA9", "Ren\xC3\xA9",
      "Zo\xC3\xAB", "Marta", "Noah", "Olga", "Pavel", "Rahul", "Sofia", "Tomas", "Yara",
  };
  return v;
}

const std::vector<std::string>& last_names() {
  static const std::vector<std::string> v = {
      "Anderson", "Bianchi", "Costa", "Dubois", "Eriksen", "Fischer", "Garcia", "Hoffmann", "Ivanova",
      "Jensen", "Kowalski", "Larsen", "Moreau", "Nakamura", "Okafor", "Petrov", "Quinn", "Rossi", "Schmidt",
      "Tanaka", "Ueda", "Vasquez", "Wagner", "Xu", "Yamamoto", "Zhang", "M\xC3\xBCller", "G\xC3\xB3mez",
      "N\xC3\xBA\xC3\xB1" "ez", "Str\xC3\xB6m", "Lef\xC3\xA8vre", "Ramanathan", "Okonkwo", "Lindqvist",
      "Herrera", "Kapoor", "Novak", "Silva", "Takahashi", "Weber", "O'Brien", "McAllister",
  };
  return v;
}

const std::vector<std::string>& conferences() {
  static const std::vector<std::string> v = {
      "Annual Meeting of the Association for Computational Linguistics",
      "Conference on Empirical Methods in Natural Language Processing",
      "International Conference on Learning Representations",
      "Conference on Neural Information Processing Systems",
      "International Conference on Machine Learning",
      "North American Chapter of the Association for Computational Linguistics",
      "International Conference on Computational Linguistics",
      "Workshop on Representation Learning for NLP",
  };
  return v;
}

const std::vector<std::string>& journals() {
  static const std::vector<std::string> v = {
      "Transactions of the Association for Computational Linguistics",
      "Journal of Machine Learning Research",
      "Computational Linguistics",
      "Journal of Artificial Intelligence Research",
      "Natural Language Engineering",
  };
  return v;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string initial_of(const std::string& name) {
  // First code point, which may be two bytes for the accented names.
  const auto len = (static_cast<unsigned char>(name[0]) & 0x80) ? 2 : 1;
  return name.substr(0, static_cast<std::size_t>(len));
}

std::string join_names(const std::vector<std::string>& names, const std::string& sep, const std::string& last_sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += (i + 1 == names.size()) ? last_sep : sep;
    out += names[i];
  }
  return out;
}

}  // namespace

const char* style_name(RefStyle style) {
  switch (style) {
    case RefStyle::acl: return "acl";
    case RefStyle::apa: return "apa";
    case RefStyle::ieee: return "ieee";
    case RefStyle::numbered: return "numbered";
  }
  return "acl";
}

std::string Corpus::title() {
  auto pick = [&](const std::vector<std::string>& v) { return v[uniform(v.size())]; };
  std::string t;
  switch (uniform(4)) {
    case 0:
      t = pick(verbs()) + " " + pick(adjectives()) + " " + pick(nouns()) + " " + pick(connectors()) + " " +
          pick(adjectives()) + " " + pick(nouns());
      break;
    case 1:
      t = capitalize(pick(adjectives())) + " " + pick(nouns()) + " " + pick(connectors()) + " " + pick(nouns()) +
          " and " + pick(nouns());
      break;
    case 2:
      t = capitalize(pick(nouns())) + ": " + pick(adjectives()) + " " + pick(nouns()) + " " +
          pick(connectors()) + " " + pick(adjectives()) + " " + pick(nouns());
      break;
    default:
      t = "On the " + pick(nouns()) + " of " + pick(adjectives()) + " " + pick(nouns()) + " " +
          pick(connectors()) + " " + pick(nouns());
      break;
  }
  if (chance(0.3)) t += " " + pick(connectors()) + " " + pick(adjectives()) + " " + pick(nouns());
  return t;
}

Person Corpus::person() {
  return Person{first_names()[uniform(first_names().size())], last_names()[uniform(last_names().size())]};
}

Reference Corpus::reference(std::string title) {
  Reference r;
  const std::size_t n = 1 + uniform(4);
  for (std::size_t i = 0; i < n; ++i) r.authors.push_back(person());
  r.title = std::move(title);
  r.year = 1995 + static_cast<int>(uniform(30));
  r.journal = chance(0.35);
  r.venue = r.journal ? journals()[uniform(journals().size())] : conferences()[uniform(conferences().size())];
  r.volume = 1 + static_cast<int>(uniform(40));
  r.issue = 1 + static_cast<int>(uniform(12));
  r.page_from = 1 + static_cast<int>(uniform(900));
  r.page_to = r.page_from + 5 + static_cast<int>(uniform(20));
  return r;
}

std::string Corpus::sentence() {
  std::string s;
  const std::size_t words = 8 + uniform(12);
  for (std::size_t i = 0; i < words; ++i) {
    const auto& pool = (i % 3 == 1) ? adjectives() : (i % 3 == 2 ? connectors() : nouns());
    std::string w = pool[uniform(pool.size())];
    if (i == 0) w = capitalize(w);
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s + ".";
}

std::string format_reference(const Reference& r, RefStyle style) {
  const std::string pages = std::to_string(r.page_from) + "\xE2\x80\x93" + std::to_string(r.page_to);
  std::vector<std::string> names;
  switch (style) {
    case RefStyle::acl: {
      for (const auto& p : r.authors) names.push_back(p.first + " " + p.last);
      std::string out = join_names(names, ", ", names.size() > 2 ? ", and " : " and ") + ". " +
                        std::to_string(r.year) + ". " + r.title + ". ";
      if (r.journal) {
        out += r.venue + ", " + std::to_string(r.volume) + "(" + std::to_string(r.issue) + "):" + pages + ".";
      } else {
        out += "In Proceedings of the " + r.venue + ", pages " + pages + ".";
      }
      return out;
    }
    case RefStyle::apa: {
      for (const auto& p : r.authors) names.push_back(p.last + ", " + initial_of(p.first) + ".");
      std::string out = join_names(names, ", ", names.size() > 1 ? ", & " : "") + " (" + std::to_string(r.year) +
                        "). " + r.title + ". ";
      if (r.journal) {
        out += r.venue + ", " + std::to_string(r.volume) + "(" + std::to_string(r.issue) + "), " + pages + ".";
      } else {
        out += "In Proceedings of the " + r.venue + " (pp. " + pages + ").";
      }
      return out;
    }
    case RefStyle::ieee: {
      for (const auto& p : r.authors) names.push_back(initial_of(p.first) + ". " + p.last);
      std::string out = join_names(names, ", ", names.size() > 2 ? ", and " : " and ") + ", \xE2\x80\x9C" +
                        r.title + ",\xE2\x80\x9D ";
      if (r.journal) {
        out += r.venue + ", vol. " + std::to_string(r.volume) + ", no. " + std::to_string(r.issue) + ", pp. " +
               pages + ", " + std::to_string(r.year) + ".";
      } else {
        out += "in Proc. " + r.venue + ", " + std::to_string(r.year) + ", pp. " + pages + ".";
      }
      return out;
    }
    case RefStyle::numbered: {
      for (const auto& p : r.authors) names.push_back(initial_of(p.first) + ". " + p.last);
      std::string out = join_names(names, ", ", " and ") + ". " + r.title + ". ";
      out += r.venue + ", " + std::to_string(r.volume) + ":" + pages + ", " + std::to_string(r.year) + ".";
      return out;
    }
  }
  return {};
}

std::string list_marker(RefStyle style, int ordinal) {
  switch (style) {
    case RefStyle::ieee: return "[" + std::to_string(ordinal) + "] ";
    case RefStyle::numbered: return std::to_string(ordinal) + ". ";
    default: return "";
  }
}

std::vector<std::pair<std::string, std::string>> make_title_db(std::size_t n, std::uint64_t seed,
                                                               const std::string& prefix) {
  Corpus corpus(seed);
  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(n);
  while (out.size() < n) {
    std::string t = corpus.title();
    if (!seen.insert(normalize_title(t)).second) continue;
    char id[32];
    std::snprintf(id, sizeof id, "%s-%07zu", prefix.c_str(), out.size() + 1);
    out.emplace_back(id, std::move(t));
  }
  return out;
}

std::string random_string(std::mt19937_64& rng, std::string_view alphabet, std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  s.reserve(length);
  for (std::size_t i = 0; i < length; ++i) s.push_back(alphabet[pick(rng)]);
  return s;
}

}  // namespace hallucite::testing
