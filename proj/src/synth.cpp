#include "knowsearch/synth.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

#include "knowsearch/corpus.hpp"
#include "knowsearch/errors.hpp"
#include "knowsearch/random.hpp"
#include "knowsearch/report.hpp"

namespace knowsearch {

namespace {

// Every word below tags as intended under the built-in tagger; the unit
// tests re-check this.
constexpr std::array<std::string_view, 72> kNouns{
    "mask",      "wafer",     "resist",     "substrate",  "reticle",     "pellicle",  "mirror",     "laser",
    "beam",      "stage",     "lens",       "aperture",   "film",        "polymer",   "solvent",    "developer",
    "exposure",  "overlay",   "projector",  "shutter",    "filter",      "detector",  "sensor",     "chamber",
    "nozzle",    "pattern",   "layer",      "scanner",    "source",      "plate",     "window",     "prism",
    "fiber",     "membrane",  "pixel",      "photomask",  "photoresist", "hardmask",  "topcoat",    "underlayer",
    "electrode", "circuit",   "trench",     "contact",    "gate",        "spacer",    "oxide",      "nitride",
    "silicon",   "carbon",    "dopant",     "acid",       "monomer",     "copolymer", "pupil",      "illuminator",
    "condenser", "collector", "droplet",    "plasma",     "vacuum",      "pump",      "heater",     "alignment",
    "focus",     "dose",      "pitch",      "profile",    "defect",      "particle",  "target",     "wavelength",
};

constexpr std::array<std::string_view, 28> kAdjectives{
    "optical",  "thermal",    "photonic", "reflective", "adaptive",   "chemical",     "magnetic",
    "organic",  "dielectric", "metallic", "conductive", "selective",  "periodic",     "dynamic",
    "acoustic", "elastic",    "ionic",    "lateral",    "vertical",   "spectral",     "digital",
    "active",   "passive",    "tunable",  "removable",  "porous",     "transmissive", "absorptive",
};

constexpr std::array<std::string_view, 16> kParticiples{
    "etched", "coated",  "patterned", "doped",  "exposed", "developed", "cured",     "heated",
    "cooled", "aligned", "stacked",   "shaped", "focused", "filtered",  "polarized", "segmented",
};

constexpr std::array<std::string_view, 14> kConnectors{
    "with", "on", "for", "and", "in", "over", "through", "onto", "into", "comprises", "includes", "within", "using", "from",
};

constexpr std::array<std::string_view, 4> kTitleConnectors{"for", "with", "and", "of"};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::array<std::string_view, N>& pool) {
  return pool[rng.below(N)];
}

std::string make_phrase(Rng& rng) {
  const double form = rng.uniform();
  std::string p;
  if (form < 0.25) {
    p = pick(rng, kNouns);
  } else if (form < 0.55) {
    p = std::string(pick(rng, kNouns)) + " " + std::string(pick(rng, kNouns));
  } else if (form < 0.80) {
    p = std::string(pick(rng, kAdjectives)) + " " + std::string(pick(rng, kNouns));
  } else if (form < 0.90) {
    p = std::string(pick(rng, kParticiples)) + " " + std::string(pick(rng, kNouns));
  } else {
    p = std::string(pick(rng, kAdjectives)) + " " + std::string(pick(rng, kNouns)) + " " +
        std::string(pick(rng, kNouns));
  }
  return p;
}

bool starts_with_vowel(std::string_view s) {
  return !s.empty() && std::string_view("aeiou").find(s.front()) != std::string_view::npos;
}

std::string with_determiner(Rng& rng, const std::string& phrase) {
  const double d = rng.uniform();
  if (d < 0.5) return "the " + phrase;
  if (d < 0.8) return (starts_with_vowel(phrase) ? "an " : "a ") + phrase;
  return phrase;
}

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

class Vocabulary {
 public:
  Vocabulary(Rng& rng, const SynthParams& params) {
    std::set<std::string> seen;
    std::size_t attempts = 0;
    while (phrases_.size() < params.vocab_size) {
      if (++attempts > params.vocab_size * 200 + 10000) {
        throw InvalidParams("vocab_size too large for the phrase generator");
      }
      auto p = make_phrase(rng);
      if (seen.insert(p).second) phrases_.push_back(std::move(p));
    }
    // Zipf-like popularity in generation order.
    double total = 0.0;
    for (std::size_t r = 0; r < phrases_.size(); ++r) {
      total += 1.0 / static_cast<double>(r + 1);
      cumulative_.push_back(total);
    }
    // The most popular sixth exists from the start; the rest enter over the
    // early part of the corpus, so that focal candidates (the trailing docs)
    // mostly reuse phrases that already have prior publications.
    const std::size_t founders = std::max<std::size_t>(1, phrases_.size() / 6);
    const auto intro_window = std::max<std::size_t>(
        1, static_cast<std::size_t>(static_cast<double>(params.n_patents) * (1.0 - params.focal_fraction) * 0.7));
    intro_.assign(phrases_.size(), 0);
    for (std::size_t r = founders; r < phrases_.size(); ++r) intro_[r] = rng.below(intro_window);
    successors_.resize(phrases_.size());
    for (std::size_t r = 0; r < phrases_.size(); ++r) {
      for (int s = 0; s < 3; ++s) {
        std::size_t next = popular(rng);
        if (next != r) successors_[r].push_back(next);
      }
    }
  }

  std::size_t size() const { return phrases_.size(); }
  const std::string& phrase(std::size_t r) const { return phrases_[r]; }
  std::size_t intro(std::size_t r) const { return intro_[r]; }
  bool available(std::size_t r, std::size_t doc) const { return intro_[r] <= doc; }

  std::size_t popular(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

  std::size_t popular_available(Rng& rng, std::size_t doc) const {
    for (;;) {
      auto r = popular(rng);
      if (available(r, doc)) return r;
    }
  }

  std::size_t follow(Rng& rng, std::size_t prev, std::size_t doc) const {
    if (rng.chance(0.5)) {
      const auto& succ = successors_[prev];
      if (!succ.empty()) {
        auto s = succ[rng.below(succ.size())];
        if (available(s, doc)) return s;
      }
    }
    return popular_available(rng, doc);
  }

 private:
  std::vector<std::string> phrases_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> intro_;
  std::vector<std::vector<std::size_t>> successors_;
};

std::uint32_t draw_citations(Rng& rng, const SynthParams& params) {
  if (rng.chance(params.zero_cited_fraction)) return 0;
  // 1 + geometric number of failures with success probability 1 / mean.
  const double p = 1.0 / params.mean_nonzero_citations;
  std::uint32_t c = 1;
  while (c < 1000 && !rng.chance(p)) ++c;
  return c;
}

void validate(const SynthParams& p) {
  if (p.n_patents == 0) throw InvalidParams("n_patents must be positive");
  if (p.vocab_size == 0) throw InvalidParams("vocab_size must be positive");
  if (p.phrases_per_abstract == 0) throw InvalidParams("phrases_per_abstract must be positive");
  if (!(p.start_date < p.end_date)) throw InvalidParams("date range must be non-empty");
  if (!(p.zero_cited_fraction >= 0.0 && p.zero_cited_fraction <= 1.0)) {
    throw InvalidParams("zero_cited_fraction must lie in [0, 1]");
  }
  if (!(p.mean_nonzero_citations >= 1.0)) throw InvalidParams("mean_nonzero_citations must be >= 1");
  if (!(p.focal_fraction > 0.0 && p.focal_fraction <= 1.0)) throw InvalidParams("focal_fraction must lie in (0, 1]");
}

}  // namespace

std::string generate_synthetic_corpus(const SynthParams& params) {
  validate(params);
  Rng rng(params.seed);
  const Vocabulary vocab(rng, params);

  std::vector<std::vector<std::size_t>> debuts(params.n_patents);
  for (std::size_t r = 0; r < vocab.size(); ++r) {
    if (vocab.intro(r) > 0) debuts[vocab.intro(r)].push_back(r);
  }

  const long first_day = params.start_date.days_since_epoch();
  const long span = params.end_date.days_since_epoch() - first_day;
  const auto n = static_cast<long>(params.n_patents);
  const auto focal_from = static_cast<std::size_t>(
      static_cast<double>(params.n_patents) * (1.0 - params.focal_fraction));

  std::ostringstream out;
  for (std::size_t i = 0; i < params.n_patents; ++i) {
    const auto li = static_cast<long>(i);
    const long slot = span / n;
    const long jitter = slot > 0 ? static_cast<long>(rng.below(static_cast<std::uint64_t>(slot))) : 0;
    const long priority = first_day + li * span / n + jitter;
    const long publication = priority + 300 + static_cast<long>(rng.below(500));

    // Title: one or two phrases.
    const auto t1 = vocab.popular_available(rng, i);
    std::string title = capitalized(vocab.phrase(t1));
    if (rng.chance(0.6)) {
      const auto t2 = vocab.follow(rng, t1, i);
      if (t2 != t1) title += " " + std::string(pick(rng, kTitleConnectors)) + " " + with_determiner(rng, vocab.phrase(t2));
    }

    // Abstract: phrase chain, debuting phrases first, cut into sentences.
    std::vector<std::size_t> chain = debuts[i];
    std::size_t prev = chain.empty() ? t1 : chain.back();
    while (chain.size() < params.phrases_per_abstract) {
      prev = chain.empty() ? vocab.follow(rng, t1, i) : vocab.follow(rng, prev, i);
      chain.push_back(prev);
    }
    std::string abstract;
    std::size_t k = 0;
    while (k < chain.size()) {
      const std::size_t len = std::min<std::size_t>(chain.size() - k, 2 + rng.below(3));
      std::string sentence = with_determiner(rng, vocab.phrase(chain[k]));
      for (std::size_t j = 1; j < len; ++j) {
        sentence += " " + std::string(pick(rng, kConnectors)) + " " + with_determiner(rng, vocab.phrase(chain[k + j]));
      }
      if (!abstract.empty()) abstract += ' ';
      abstract += capitalized(sentence) + ".";
      k += len;
    }

    PatentDoc doc;
    char id[32];
    std::snprintf(id, sizeof id, "SYN%05zu", i + 1);
    doc.id = id;
    doc.title = title;
    doc.abstract = abstract;
    doc.priority_date = Date::from_days(priority);
    doc.publication_date = Date::from_days(publication);
    doc.forward_citations_5y = draw_citations(rng, params);
    doc.focal_candidate = i >= focal_from;
    out << record_to_json(doc).dump() << '\n';
  }
  return out.str();
}

void write_synthetic_corpus(const SynthParams& params, const std::filesystem::path& out) {
  const auto text = generate_synthetic_corpus(params);
  write_file_atomic(out, [&](std::ostream& os) { os << text; });
}

}  // namespace knowsearch
