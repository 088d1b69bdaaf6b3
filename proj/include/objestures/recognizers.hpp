#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "objestures/config.hpp"
#include "objestures/hand.hpp"
#include "objestures/smoothing.hpp"

namespace objestures {

enum class RecognizerKind { Binary, Linear, Rotational, Nonlinear, Free };

std::string_view to_string(RecognizerKind k);
std::optional<RecognizerKind> recognizer_from_string(std::string_view name);

enum class PhaseKind { Setup, Ready, Engaged };

/// Setup carries the number of anchors captured so far.
struct Phase {
  PhaseKind kind = PhaseKind::Setup;
  std::size_t progress = 0;

  friend bool operator==(const Phase&, const Phase&) = default;
};

/// Output of a recognizer: a scalar, or a position for Free.
using OutputValue = std::variant<double, Vec3>;

enum class EventKind { SetupConfirmed, Activated, Deactivated, Engaged, Disengaged, ValueChanged };

std::string_view to_string(EventKind k);

struct RecognizerEvent {
  EventKind kind;
  OutputValue value = 0.0;  // anchor index for SetupConfirmed, 1/0 for Activated/Deactivated

  friend bool operator==(const RecognizerEvent&, const RecognizerEvent&) = default;
};

struct StepResult {
  Phase phase;
  OutputValue value = 0.0;
  std::vector<RecognizerEvent> events;
};

/// A per-hand state machine: a thumbs-up confirmed setup phase that captures
/// anchors, followed by per-frame output computation.
///
/// Confirmation is the rising edge of SetupConfig::confirm on the hand that
/// is not tracked. Frames must arrive in increasing timestamp order; dt is
/// derived from consecutive timestamps (SetupConfig::fallback_dt before the
/// first pair). A frame without the tracked hand leaves the output unchanged.
class Recognizer {
 public:
  Recognizer(const Recognizer&) = delete;
  Recognizer& operator=(const Recognizer&) = delete;
  virtual ~Recognizer() = default;

  virtual RecognizerKind kind() const = 0;

  /// Routes the frame to setup_step or step depending on the phase.
  StepResult feed(const HandFrame& frame);

  /// Requires Setup, else throws Errc::WrongPhase.
  StepResult setup_step(const HandFrame& frame);

  /// Requires Ready/Engaged, else throws Errc::WrongPhase.
  StepResult step(const HandFrame& frame);

  /// Back to Setup with all anchors and output state cleared.
  void reset();

  Phase phase() const;
  bool ready() const { return ready_; }
  virtual OutputValue value() const = 0;
  Handedness tracked_hand() const { return hand_; }

 protected:
  Recognizer(const EngineConfig& cfg, Handedness hand);

  /// Number of confirmations needed before Ready.
  virtual std::size_t anchors_required() const = 0;

  /// Captures anchor `index` from the tracked hand. Called on each rising
  /// edge; for the last anchor it must also validate the anchor set.
  virtual void capture_anchor(std::size_t index, const HandState& tracked) = 0;

  virtual void on_ready() {}

  /// Processes one frame once Ready. `tracked` is null if the hand is absent.
  virtual void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                          std::vector<RecognizerEvent>& events) = 0;

  virtual void clear() = 0;
  virtual bool engaged() const { return false; }

  /// Forces the Ready phase at construction for types that need no anchors.
  void mark_ready() { ready_ = true; }

  const EngineConfig& config() const { return cfg_; }

 private:
  double advance_clock(double t);

  EngineConfig cfg_;
  Handedness hand_;
  bool ready_ = false;
  std::size_t progress_ = 0;
  bool confirm_was_held_ = false;
  std::optional<double> last_t_;
};

/// Two-state control. ObjectAnchored compares a joint against calibrated
/// active/inactive points with a two-zone hysteresis; GestureLabeled mirrors
/// the presence of a pose label on the tracked hand.
class BinaryRecognizer final : public Recognizer {
 public:
  explicit BinaryRecognizer(const EngineConfig& cfg);

  RecognizerKind kind() const override { return RecognizerKind::Binary; }
  OutputValue value() const override { return active_ ? 1.0 : 0.0; }

  bool active() const { return active_; }
  bool engaged() const override { return active_; }
  const std::optional<Vec3>& active_point() const { return active_point_; }
  const std::optional<Vec3>& inactive_point() const { return inactive_point_; }

 protected:
  std::size_t anchors_required() const override;
  void capture_anchor(std::size_t index, const HandState& tracked) override;
  void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                  std::vector<RecognizerEvent>& events) override;
  void clear() override;

 private:
  BinaryConfig bcfg_;
  std::optional<Vec3> active_point_;
  std::optional<Vec3> inactive_point_;
  bool active_ = false;
};

/// Slider along a calibrated segment. With continuous sliding, each
/// re-entry continues from the current value instead of jumping to the
/// absolute position, so the output range is unbounded.
class LinearRecognizer final : public Recognizer {
 public:
  explicit LinearRecognizer(const EngineConfig& cfg);

  RecognizerKind kind() const override { return RecognizerKind::Linear; }
  OutputValue value() const override { return value_; }

  double scalar() const { return value_; }
  bool engaged() const override { return engaged_; }
  double offset() const { return offset_; }
  const std::optional<Vec3>& p1() const { return p1_; }
  const std::optional<Vec3>& p2() const { return p2_; }

 protected:
  std::size_t anchors_required() const override { return 2; }
  void capture_anchor(std::size_t index, const HandState& tracked) override;
  void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                  std::vector<RecognizerEvent>& events) override;
  void clear() override;

 private:
  LinearConfig lcfg_;
  Aema filter_;
  std::optional<Vec3> p1_;
  std::optional<Vec3> p2_;
  double value_ = 0.0;
  double last_reported_ = 0.0;
  double offset_ = 0.0;
  bool engaged_ = false;
};

/// Dial: yaw of (middle_knuckle - wrist) about +Y, accumulated across
/// re-grips. Leaving the engagement sphere freezes the output; coming back
/// resets the orientation reference and continues from the frozen value.
class RotationalRecognizer final : public Recognizer {
 public:
  explicit RotationalRecognizer(const EngineConfig& cfg);

  RecognizerKind kind() const override { return RecognizerKind::Rotational; }
  OutputValue value() const override { return theta_; }

  double theta() const { return theta_; }
  double theta_at_departure() const { return theta_at_departure_; }
  bool engaged() const override { return engaged_; }
  const std::optional<Vec3>& grip_point() const { return grip_point_; }
  const Vec3& ref_dir() const { return ref_dir_; }

 protected:
  std::size_t anchors_required() const override { return 1; }
  void capture_anchor(std::size_t index, const HandState& tracked) override;
  void on_ready() override;
  void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                  std::vector<RecognizerEvent>& events) override;
  void clear() override;

 private:
  RotationalConfig rcfg_;
  GainConfig gain_;
  Aema filter_;
  std::optional<Vec3> grip_point_;
  Vec3 ref_dir_;
  Vec3 prev_dir_;
  double accumulated_ = 0.0;
  double theta_ = 0.0;
  double theta_at_departure_ = 0.0;
  double last_reported_ = 0.0;
  bool engaged_ = false;
};

/// Squeeze intensity: 1 - D_current / D_baseline clamped to [0, 1], where D
/// is the palm-to-fingertip distance sum.
class NonlinearRecognizer final : public Recognizer {
 public:
  explicit NonlinearRecognizer(const EngineConfig& cfg);

  RecognizerKind kind() const override { return RecognizerKind::Nonlinear; }
  OutputValue value() const override { return intensity_; }

  double intensity() const { return intensity_; }
  double baseline() const { return baseline_; }

 protected:
  std::size_t anchors_required() const override { return 1; }
  void capture_anchor(std::size_t index, const HandState& tracked) override;
  void on_ready() override;
  void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                  std::vector<RecognizerEvent>& events) override;
  void clear() override;

 private:
  Aema filter_;
  double baseline_ = 0.0;
  double intensity_ = 0.0;
  double last_reported_ = 0.0;
};

/// Free placement with dwell-based engage and disengage. The object follows
/// the midpoint of two contact joints only while engaged.
///
/// Engage: midpoint within tolerance of the object for `dwell` seconds,
/// measured from the first in-zone frame. Disengage: frame-to-frame motion
/// below stationary_eps for `dwell` seconds. After a disengage the hand has
/// to leave the zone before a new dwell can start.
class FreeRecognizer final : public Recognizer {
 public:
  explicit FreeRecognizer(const EngineConfig& cfg);

  RecognizerKind kind() const override { return RecognizerKind::Free; }
  OutputValue value() const override { return object_; }

  const Vec3& object_position() const { return object_; }
  bool engaged() const override { return engaged_; }
  double dwell_timer() const { return dwell_timer_; }
  double stationary_timer() const { return stationary_timer_; }

 protected:
  std::size_t anchors_required() const override { return 1; }
  void capture_anchor(std::size_t index, const HandState& tracked) override;
  void ready_step(const HandFrame& frame, const HandState* tracked, double dt,
                  std::vector<RecognizerEvent>& events) override;
  void clear() override;

 private:
  Vec3 contact_midpoint(const HandState& tracked) const;

  FreeConfig fcfg_;
  Vec3 object_;
  Vec3 last_reported_;
  Vec3 prev_midpoint_;
  bool engaged_ = false;
  bool needs_exit_ = false;
  std::optional<double> zone_since_;
  std::optional<double> still_since_;
  double prev_t_ = 0.0;
  double dwell_timer_ = 0.0;
  double stationary_timer_ = 0.0;
};

std::unique_ptr<Recognizer> make_recognizer(RecognizerKind kind, const EngineConfig& cfg);

}  // namespace objestures
