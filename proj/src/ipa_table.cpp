#include "phonlesson/styled_text.hpp"

namespace phonlesson {

// IPA Extensions block plus the stress and length marks.
const std::vector<PaletteEntry>& ipa_palette() {
  static const std::vector<PaletteEntry> kPalette = {
    {0x0250, "turned a"},
    {0x0251, "alpha"},
    {0x0252, "turned alpha"},
    {0x0253, "b with hook"},
    {0x0254, "open o"},
    {0x0255, "c with curl"},
    {0x0256, "d with tail"},
    {0x0257, "d with hook"},
    {0x0258, "reversed e"},
    {0x0259, "schwa"},
    {0x025A, "schwa with hook"},
    {0x025B, "open e"},
    {0x025C, "reversed open e"},
    {0x025D, "reversed open e with hook"},
    {0x025E, "closed reversed open e"},
    {0x025F, "dotless j with stroke"},
    {0x0260, "g with hook"},
    {0x0261, "script g"},
    {0x0262, "small capital g"},
    {0x0263, "gamma"},
    {0x0264, "rams horn"},
    {0x0265, "turned h"},
    {0x0266, "h with hook"},
    {0x0267, "heng with hook"},
    {0x0268, "i with stroke"},
    {0x0269, "iota"},
    {0x026A, "small capital i"},
    {0x026B, "l with middle tilde"},
    {0x026C, "l with belt"},
    {0x026D, "l with retroflex hook"},
    {0x026E, "lezh"},
    {0x026F, "turned m"},
    {0x0270, "turned m with long leg"},
    {0x0271, "m with hook"},
    {0x0272, "n with left hook"},
    {0x0273, "n with retroflex hook"},
    {0x0274, "small capital n"},
    {0x0275, "barred o"},
    {0x0276, "small capital oe"},
    {0x0277, "closed omega"},
    {0x0278, "phi"},
    {0x0279, "turned r"},
    {0x027A, "turned r with long leg"},
    {0x027B, "turned r with hook"},
    {0x027C, "r with long leg"},
    {0x027D, "r with tail"},
    {0x027E, "r with fishhook"},
    {0x027F, "reversed r with fishhook"},
    {0x0280, "small capital r"},
    {0x0281, "small capital inverted r"},
    {0x0282, "s with hook"},
    {0x0283, "esh"},
    {0x0284, "dotless j with stroke and hook"},
    {0x0285, "squat reversed esh"},
    {0x0286, "esh with curl"},
    {0x0287, "turned t"},
    {0x0288, "t with retroflex hook"},
    {0x0289, "u bar"},
    {0x028A, "upsilon"},
    {0x028B, "v with hook"},
    {0x028C, "turned v"},
    {0x028D, "turned w"},
    {0x028E, "turned y"},
    {0x028F, "small capital y"},
    {0x0290, "z with retroflex hook"},
    {0x0291, "z with curl"},
    {0x0292, "ezh"},
    {0x0293, "ezh with curl"},
    {0x0294, "glottal stop"},
    {0x0295, "pharyngeal voiced fricative"},
    {0x0296, "inverted glottal stop"},
    {0x0297, "stretched c"},
    {0x0298, "bilabial click"},
    {0x0299, "small capital b"},
    {0x029A, "closed open e"},
    {0x029B, "small capital g with hook"},
    {0x029C, "small capital h"},
    {0x029D, "j with crossed-tail"},
    {0x029E, "turned k"},
    {0x029F, "small capital l"},
    {0x02A0, "q with hook"},
    {0x02A1, "glottal stop with stroke"},
    {0x02A2, "reversed glottal stop with stroke"},
    {0x02A3, "dz digraph"},
    {0x02A4, "dezh digraph"},
    {0x02A5, "dz digraph with curl"},
    {0x02A6, "ts digraph"},
    {0x02A7, "tesh digraph"},
    {0x02A8, "tc digraph with curl"},
    {0x02A9, "feng digraph"},
    {0x02AA, "ls digraph"},
    {0x02AB, "lz digraph"},
    {0x02AC, "bilabial percussive"},
    {0x02AD, "bidental percussive"},
    {0x02AE, "turned h with fishhook"},
    {0x02AF, "turned h with fishhook and tail"},
    {0x02C8, "primary stress"},
    {0x02CC, "secondary stress"},
    {0x02D0, "length mark"},
  };
  return kPalette;
}

}  // namespace phonlesson
