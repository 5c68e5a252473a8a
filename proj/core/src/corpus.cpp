#include <fstream>

#include "json.hpp"

#include "uhtp/error.hpp"
#include "uhtp/reduction.hpp"

namespace uhtp {

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw CorpusError("cannot open corpus manifest " + manifest.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(manifest.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw CorpusError(manifest.string() + ": expected a JSON list");

  std::vector<CorpusEntry> entries;
  const auto base = manifest.parent_path();
  for (const auto& item : doc) {
    try {
      const std::string name = item.at("name").get<std::string>();
      MachineSpec machine = load_machine(base / item.at("machine_file").get<std::string>());
      const auto& gt = item.at("ground_truth");
      const std::string kind = gt.at("kind").get<std::string>();
      GroundTruth truth;
      if (kind == "halts") {
        truth = Halts{gt.at("K").get<std::uint64_t>()};
      } else if (kind == "loops") {
        const auto& r = gt.at("revisit");
        if (!r.is_array() || r.size() != 2) {
          throw CorpusError("entry '" + name + "': revisit must be [r, r']");
        }
        truth = LoopsForever{r[0].get<std::uint64_t>(), r[1].get<std::uint64_t>(),
                             gt.value("certificate", std::string{})};
      } else {
        throw CorpusError("entry '" + name + "': unknown ground truth kind '" + kind + "'");
      }
      entries.push_back({name, std::move(machine), std::move(truth)});
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(manifest.string() + ": " + e.what());
    }
  }
  return entries;
}

}  // namespace uhtp
