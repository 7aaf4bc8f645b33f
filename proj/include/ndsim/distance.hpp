#pragma once

#include <array>
#include <optional>

namespace ndsim {

// Log-distance path loss: loss(d) = ref_loss + 10 n log10(d) [+ body
// attenuation when tissue blocks the path]. ref_loss is the 1 m free-space
// value; its choice cancels out of every ratio-based check.
struct PathLossModel {
  double ref_loss_db_at_1m = 40.0;
  double exponent = 2.0;              // free space: 2
  double body_attenuation_db = 19.2;  // chest-to-back shadowing

  void validate() const;
};

// Forward model: attenuation seen at distance_m, optionally through a body.
double path_loss_db(const PathLossModel& model, double distance_m, bool through_body = false);

// Free-space inversion of an observed attenuation. Body shadowing is
// deliberately not compensated; that is the error being demonstrated.
double estimate_distance_m(double observed_loss_db, const PathLossModel& model);

enum class ContactClass { kRelevant, kNotRelevant };

// Relevant iff the estimated distance is at or below the threshold.
ContactClass classify_contact(double estimated_distance_m, double threshold_m = 1.5);

// Factor by which body shadowing inflates a free-space distance estimate:
// 10^(body_attenuation / (10 n)).
double shadow_factor(const PathLossModel& model);

// Measured tissue-vs-free-space equivalences. free_space_m is empty where the
// source gives no number, only "far beyond": classify such rows as not
// relevant at any practical threshold.
struct TissueRow {
  double tissue_cm;
  std::optional<double> free_space_m;
};

const std::array<TissueRow, 3>& tissue_equivalence_table();

ContactClass classify_tissue_row(const TissueRow& row, double threshold_m = 1.5);

}  // namespace ndsim
