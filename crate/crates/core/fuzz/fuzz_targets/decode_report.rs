#![no_main]

use libfuzzer_sys::fuzz_target;
use permstat::bijection::LevelReport;
use permstat::enumerate::CampaignReport;
use permstat::patterns::Occurrence;

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<CampaignReport>(data);
    let _ = serde_json::from_slice::<LevelReport>(data);
    let _ = serde_json::from_slice::<Occurrence>(data);
});
