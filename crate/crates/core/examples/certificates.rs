//! Certificate-producing decisions and their independent re-check.

use stablecat::certificate::{check_certificate, decide, DecideInput, DecideKind};
use stablecat::instances::headline_pair;
use stablecat::json::{AnyMorphismJson, UnderMorphismJson};

fn main() -> stablecat::Result<()> {
    let (f, g) = headline_pair();
    let input = DecideInput::Pair {
        f: AnyMorphismJson::Under(UnderMorphismJson::from(&f)),
        g: AnyMorphismJson::Under(UnderMorphismJson::from(&g)),
    };
    for kind in [DecideKind::Homotopic, DecideKind::Distinct, DecideKind::HoEqual] {
        let v = decide(kind, &input)?;
        println!("{kind:?}: {} (certificate valid: {})", v.verdict, check_certificate(&v)?);
        println!("{}", serde_json::to_string(&v.certificate).expect("serializable"));
    }
    Ok(())
}
