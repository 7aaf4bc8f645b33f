#include "ndsim/distance.hpp"

#include <cmath>
#include <stdexcept>

namespace ndsim {

void PathLossModel::validate() const {
  if (!(exponent > 0)) throw std::invalid_argument("path loss exponent must be positive");
  if (ref_loss_db_at_1m < 0 || body_attenuation_db < 0)
    throw std::invalid_argument("attenuations must be >= 0");
}

double path_loss_db(const PathLossModel& model, double distance_m, bool through_body) {
  model.validate();
  if (!(distance_m > 0)) throw std::invalid_argument("distance must be positive");
  double loss = model.ref_loss_db_at_1m + 10.0 * model.exponent * std::log10(distance_m);
  if (through_body) loss += model.body_attenuation_db;
  return loss;
}

double estimate_distance_m(double observed_loss_db, const PathLossModel& model) {
  model.validate();
  if (observed_loss_db < 0) throw std::invalid_argument("observed loss must be >= 0");
  return std::pow(10.0, (observed_loss_db - model.ref_loss_db_at_1m) / (10.0 * model.exponent));
}

ContactClass classify_contact(double estimated_distance_m, double threshold_m) {
  if (estimated_distance_m < 0) throw std::invalid_argument("distance must be >= 0");
  return estimated_distance_m <= threshold_m ? ContactClass::kRelevant
                                             : ContactClass::kNotRelevant;
}

double shadow_factor(const PathLossModel& model) {
  model.validate();
  return std::pow(10.0, model.body_attenuation_db / (10.0 * model.exponent));
}

const std::array<TissueRow, 3>& tissue_equivalence_table() {
  static const std::array<TissueRow, 3> table{{
      {20.0, 0.60},
      {25.0, 1.00},
      {32.0, std::nullopt},  // source: far beyond 1 m, no number given
  }};
  return table;
}

ContactClass classify_tissue_row(const TissueRow& row, double threshold_m) {
  if (!row.free_space_m) return ContactClass::kNotRelevant;
  return classify_contact(*row.free_space_m, threshold_m);
}

}  // namespace ndsim
