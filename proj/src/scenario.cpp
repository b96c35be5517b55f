// Copyright 2026 The fptc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fptc/scenario.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fptc/errors.hpp"

namespace fptc {

LtiModel Scenario::DeviationModel() const {
  return gains ? LtiModel::TrackingController(diffusion, *gains)
               : LtiModel::DoubleIntegrator(diffusion);
}

ConflictQuery Scenario::Query() const {
  ConflictQuery q;
  q.plan = plan;
  q.boundary = boundary;
  q.horizon = horizon;
  q.dt = dt;
  if (gains) {
    q.model = ClosedLoop::FromGains(diffusion, *gains);
  } else {
    q.model = OpenLoop{diffusion};
  }
  return q;
}

std::vector<GaussianBelief> Scenario::Beliefs(
    const std::vector<double>& grid) const {
  const LtiModel model = DeviationModel();
  std::vector<GaussianBelief> out;
  out.reserve(grid.size());
  // The deviation mean stays zero; only its covariance evolves.
  Mat4 cov = Mat4::Zero();
  double now = 0.0;
  Discretization disc;
  double last_h = -1.0;
  for (double t : grid) {
    const double h = t - now;
    if (h < 0.0) throw InvalidArgument("belief grid must be increasing");
    if (h > 0.0) {
      if (std::abs(h - last_h) > 1e-12 * std::max(1.0, h)) {
        disc = Discretize(model, h);
        last_h = h;
      }
      cov = disc.transition * cov * disc.transition.transpose() +
            disc.process_noise;
      cov = 0.5 * (cov + cov.transpose());
      now = t;
    }
    out.push_back(PlanBelief(plan, std::min(t, plan.duration()), cov));
  }
  if (!grid.empty()) CheckCovariance(cov);
  return out;
}

void Scenario::Validate() const {
  Query().Validate();
  if (disk && !(disk->radius > 0.0)) {
    throw InvalidArgument("disk radius must be positive");
  }
  const Eigen::SelfAdjointEigenSolver<Mat2> eig(diffusion);
  if ((diffusion - diffusion.transpose()).norm() > 1e-12 * diffusion.norm() ||
      eig.eigenvalues().minCoeff() < -1e-12) {
    throw InvalidArgument("diffusion matrix must be symmetric PSD");
  }
}

Scenario TransformScenario(const Scenario& s, const RigidTransform& t) {
  Scenario out = s;
  std::vector<PlanStage> stages = s.plan.stages();
  for (auto& st : stages) {
    st.start = t.Apply(st.start);
    st.velocity = t.ApplyVector(st.velocity);
  }
  out.plan = PiecewiseLinearPlan(std::move(stages));
  out.diffusion = t.rotation * s.diffusion * t.rotation.transpose();
  if (s.gains) {
    const auto& g = *s.gains;
    if (std::abs(g.position.x() - g.position.y()) > 0.0 ||
        std::abs(g.velocity.x() - g.velocity.y()) > 0.0) {
      throw InvalidArgument("only isotropic gains can be rotated");
    }
  }
  std::vector<Segment> segs;
  std::vector<Vec2> normals;
  for (std::size_t i = 0; i < s.boundary.size(); ++i) {
    segs.push_back(TransformSegment(s.boundary.segment(i), t));
    normals.push_back(t.ApplyVector(s.boundary.normal(i)));
  }
  out.boundary = ConflictBoundary(std::move(segs), std::move(normals));
  if (s.disk) out.disk = Disk{t.Apply(s.disk->center), s.disk->radius};
  return out;
}

}  // namespace fptc
