#pragma once

#include <memory>
#include <string>
#include <vector>

#include "s2st/accent_phrase.hpp"
#include "s2st/duration.hpp"
#include "s2st/playback.hpp"
#include "s2st/stage.hpp"

namespace s2st {

/// Incremental synthesis timing: groups incoming tokens into accent phrases
/// (hold-one), predicts each phrase's playback duration, and writes one `chk`
/// event per phrase once it is synthesized. The compute cost is charged per
/// phrase, with the per-token part scaled by the phrase's token count.
class SynthesisStage final : public Stage {
 public:
  SynthesisStage(std::string name, BoundaryRules rules, std::shared_ptr<const DurationModel> model,
                 ComputeModel compute = {});

  const std::string& name() const noexcept override { return name_; }
  Channel output_channel() const noexcept override { return events_.channel(); }
  std::vector<TimedEvent> push(const TimedEvent& input, Millis now_ms) override;
  void finish() override;

  /// Every chunk produced so far, in emission order.
  const std::vector<SynthChunk>& chunks() const noexcept { return chunks_; }

 private:
  void synthesize(AccentPhrase phrase, Millis available, Millis now_ms,
                  std::vector<TimedEvent>& out);

  std::string name_;
  BoundaryRules rules_;
  std::shared_ptr<const DurationModel> model_;
  ComputeModel compute_;
  AccentPhraser phraser_;
  EventFactory events_{Channel::ITTS};

  bool in_segment_ = false;
  Provenance segment_;
  Millis last_emit_ = 0;
  std::vector<SynthChunk> chunks_;
};

}  // namespace s2st
