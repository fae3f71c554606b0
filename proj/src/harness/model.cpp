// Copyright 2026 The sfgnet Authors. All Rights Reserved.
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

#include "sfg/harness/model.hpp"

#include <array>

#include "sfg/core/errors.hpp"
#include "sfg/semantic/bca.hpp"
#include "sfg/semantic/bin.hpp"
#include "sfg/semantic/mfa.hpp"
#include "sfg/semantic/text_encoder.hpp"
#include "sfg/spectral/fft.hpp"
#include "sfg/spectral/fsf.hpp"
#include "sfg/spectral/mbfm.hpp"
#include "sfg/structure/structure.hpp"

namespace sfg::harness {

EncodedInput encode_input(const semantic::StubVisionEncoder& encoder, const Tensor& image,
                          const std::string& prompt) {
  Tensor rgb = image;
  if (image.channels() == 1) {
    rgb = Tensor(Shape{3, image.height(), image.width()});
    for (int c = 0; c < 3; ++c)
      std::copy(image.data().begin(), image.data().end(), rgb.channel(c).begin());
  } else if (image.channels() != 3) {
    throw ShapeError("image must have 1 or 3 channels, got " + to_string(image.shape()));
  }
  return {encoder.encode(rgb), semantic::encode_prompt(prompt), image.height(), image.width()};
}

ForwardResult forward_pipeline(Context& ctx, const EncodedInput& in, const RunConfig& cfg) {
  const ModuleToggles& on = cfg.toggles;
  ForwardResult r;
  Named& dump = r.intermediates;
  semantic::PyramidVars v = semantic::as_constants(ctx.tape(), in.pyramid);
  r.text = ctx.constant(in.text);
  dump.insert(dump.end(), {{"v3", v.v3}, {"v4", v.v4}, {"v5", v.v5}});

  Var p3 = v.v3, n4 = v.v4, n5 = v.v5;
  if (on.bin) {
    const semantic::GateResult g = semantic::bin_gate(ctx, v, r.text);
    const semantic::FlowResult f = semantic::bin_flow(ctx, g.gated);
    p3 = f.p3;
    n4 = f.n4;
    n5 = f.n5;
    dump.insert(dump.end(), {{"bin_gated3", g.gated.v3}, {"bin_gated4", g.gated.v4},
                             {"bin_gated5", g.gated.v5}, {"bin_p3", p3}, {"bin_n4", n4},
                             {"bin_n5", n5}});
  }

  Var f_bca = p3;
  if (on.bca) {
    const semantic::BcaResult b = semantic::bca_forward(ctx, p3, r.text);
    f_bca = b.out;
    dump.insert(dump.end(), {{"bca_x_text", b.x_text}, {"bca_text_gate", b.text_gate},
                             {"bca_attention", b.attention}, {"bca_out", f_bca}});
  }

  r.f_mfa = on.mfa ? semantic::mfa_forward(ctx, f_bca, n4, n5)
                   : semantic::mean_fuse(ctx, f_bca, n4, n5);
  dump.emplace_back("mfa", r.f_mfa);

  Var f_freq = r.f_mfa;
  if (on.mbfm) {
    const Shape s = r.f_mfa.shape();
    const int ph = spectral::next_power_of_two(s.h), pw = spectral::next_power_of_two(s.w);
    Var x = (ph == s.h && pw == s.w) ? r.f_mfa : ops::pad_to(r.f_mfa, ph, pw);
    x = spectral::mbfm_forward(ctx, x, cfg.band_edges);
    f_freq = (ph == s.h && pw == s.w) ? x : ops::crop(x, s.h, s.w);
    dump.emplace_back("mbfm", f_freq);
  }

  Var f_fs = f_freq;
  if (on.fsf) {
    const spectral::FsfResult f = spectral::fsf_forward(ctx, r.f_mfa, f_freq);
    f_fs = f.fused;
    dump.insert(dump.end(), {{"fsf_channel_gate", f.channel_gate},
                             {"fsf_spatial_gate", f.spatial_gate}, {"fsf_fused", f_fs}});
  }

  const structure::DecoderResult d =
      structure::decoder_forward(ctx, f_fs, n5, in.height, in.width, on.iseb);
  for (std::size_t i = 0; i < d.stages.size(); ++i)
    dump.emplace_back("decoder_stage" + std::to_string(i + 1), d.stages[i]);
  dump.emplace_back("logits", d.logits);
  r.prediction = d.prediction;
  dump.emplace_back("prediction", r.prediction);
  return r;
}

Prediction predict(const semantic::StubVisionEncoder& encoder, ParamStore& params,
                   const Tensor& image, const std::string& prompt, const RunConfig& cfg) {
  const EncodedInput in = encode_input(encoder, image, prompt);
  Tape tape;
  Context ctx(tape, params);
  const ForwardResult r = forward_pipeline(ctx, in, cfg);
  Prediction p;
  p.map = r.prediction.value();
  p.intermediates.reserve(r.intermediates.size());
  for (const auto& [name, var] : r.intermediates) p.intermediates.emplace_back(name, var.value());
  return p;
}

}  // namespace sfg::harness
