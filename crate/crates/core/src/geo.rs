//! Event and region analytics over geotagged posts.
//!
//! Coordinates are `(lat, lon)` in degrees; timestamps are UTC Unix seconds.
//! Date windows are half-open `[start, end)`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::scores::PredictionIndex;
use crate::{Error, Result};

/// Label for posts outside every region.
pub const UNASSIGNED: &str = "unassigned";

/// Score above which a protest image counts as violent, unless configured.
pub const DEFAULT_VIOLENCE_CUTOFF: f64 = 0.5;

/// Protest score at or above which an image is classified as a protest image.
pub const PROTEST_CUTOFF: f64 = 0.5;

/// A geotagged post.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoTweet {
    pub tweet_id: String,
    pub user_id: String,
    /// UTC, seconds since the Unix epoch.
    pub timestamp: i64,
    pub lat: f64,
    pub lon: f64,
    pub text: String,
    /// Lowercase tags without `#`, sorted and unique.
    pub hashtags: Vec<String>,
    pub image_id: Option<String>,
}

impl GeoTweet {
    pub fn has_any_tag(&self, tags: &[String]) -> bool {
        tags.iter().any(|t| self.hashtags.binary_search(t).is_ok())
    }
}

/// Lowercased `#tag` tokens of `text`, sorted and deduplicated. A tag is the
/// run of alphanumerics and underscores right after a `#`.
pub fn extract_hashtags(text: &str) -> Vec<String> {
    let mut tags = BTreeSet::new();
    let mut rest = text;
    while let Some(pos) = rest.find('#') {
        rest = &rest[pos + 1..];
        let end = rest
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if end > 0 {
            tags.insert(rest[..end].to_lowercase());
        }
        rest = &rest[end..];
    }
    tags.into_iter().collect()
}

/// Checks the coordinate bounds of a GPS fix.
pub fn check_coordinates(lat: f64, lon: f64) -> Result<()> {
    if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
        return Err(Error::Range(alloc::format!("coordinates ({lat}, {lon}) out of range")));
    }
    Ok(())
}

/// A named area made of closed `(lat, lon)` rings, combined with the even-odd
/// rule (so inner rings act as holes).
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub name: String,
    pub rings: Vec<Vec<(f64, f64)>>,
}

impl Region {
    pub fn new(name: impl Into<String>, rings: Vec<Vec<(f64, f64)>>) -> Result<Self> {
        let name = name.into();
        if rings.is_empty() {
            return Err(Error::InvalidRegion(alloc::format!("`{name}` has no rings")));
        }
        for ring in &rings {
            if ring.len() < 4 {
                return Err(Error::InvalidRegion(alloc::format!(
                    "`{name}` has a ring with {} vertices (need at least 4)",
                    ring.len()
                )));
            }
            if ring.first() != ring.last() {
                return Err(Error::InvalidRegion(alloc::format!("`{name}` has an unclosed ring")));
            }
            if ring.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
                return Err(Error::InvalidRegion(alloc::format!("`{name}` has a non-finite vertex")));
            }
        }
        Ok(Region { name, rings })
    }

    /// Axis-aligned square `[lat0, lat0 + size] x [lon0, lon0 + size]`.
    pub fn square(name: impl Into<String>, lat0: f64, lon0: f64, size: f64) -> Result<Self> {
        let ring = vec![
            (lat0, lon0),
            (lat0, lon0 + size),
            (lat0 + size, lon0 + size),
            (lat0 + size, lon0),
            (lat0, lon0),
        ];
        Region::new(name, vec![ring])
    }

    /// Even-odd containment; points on any edge count as inside.
    pub fn contains(&self, lat: f64, lon: f64) -> bool {
        let (px, py) = (lon, lat);
        let mut inside = false;
        for ring in &self.rings {
            for edge in ring.windows(2) {
                let (ay, ax) = edge[0];
                let (by, bx) = edge[1];
                if on_segment(px, py, ax, ay, bx, by) {
                    return true;
                }
                if (ay > py) != (by > py) {
                    let x_cross = ax + (py - ay) * (bx - ax) / (by - ay);
                    if px < x_cross {
                        inside = !inside;
                    }
                }
            }
        }
        inside
    }
}

fn on_segment(px: f64, py: f64, ax: f64, ay: f64, bx: f64, by: f64) -> bool {
    let cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    let scale = libm::fabs(bx - ax) + libm::fabs(by - ay);
    libm::fabs(cross) <= 1e-12 * scale.max(1.0)
        && px >= ax.min(bx)
        && px <= ax.max(bx)
        && py >= ay.min(by)
        && py <= ay.max(by)
}

/// Name of the first region containing the point, or [`UNASSIGNED`].
pub fn assign_region(lat: f64, lon: f64, regions: &[Region]) -> &str {
    regions
        .iter()
        .find(|r| r.contains(lat, lon))
        .map_or(UNASSIGNED, |r| r.name.as_str())
}

#[derive(Debug, Clone, PartialEq)]
pub enum EventMode {
    /// Posts carrying any of these (lowercase) tags.
    Hashtag(Vec<String>),
    /// Posts inside a region during `[start, end)`.
    RegionWindow {
        region: String,
        start: i64,
        end: i64,
        /// Keep only posts whose image is classified as a protest image.
        require_protest: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventSpec {
    pub name: String,
    pub mode: EventMode,
}

fn is_protest(image_id: Option<&str>, predictions: &PredictionIndex) -> bool {
    image_id
        .and_then(|id| predictions.get(id))
        .is_some_and(|p| p.protest >= PROTEST_CUTOFF)
}

/// Selects the posts belonging to an event.
pub fn filter_event<'a>(
    tweets: &'a [GeoTweet],
    spec: &EventSpec,
    regions: &[Region],
    predictions: Option<&PredictionIndex>,
) -> Result<Vec<&'a GeoTweet>> {
    match &spec.mode {
        EventMode::Hashtag(tags) => {
            let mut tags = tags.clone();
            tags.sort();
            Ok(tweets.iter().filter(|t| t.has_any_tag(&tags)).collect())
        }
        EventMode::RegionWindow { region, start, end, require_protest } => {
            let area = regions
                .iter()
                .find(|r| &r.name == region)
                .ok_or_else(|| Error::Config(alloc::format!("event `{}`: unknown region `{region}`", spec.name)))?;
            let predictions = match (require_protest, predictions) {
                (true, None) => {
                    return Err(Error::Config(alloc::format!(
                        "event `{}` requires protest predictions",
                        spec.name
                    )))
                }
                (true, Some(p)) => Some(p),
                (false, _) => None,
            };
            Ok(tweets
                .iter()
                .filter(|t| t.timestamp >= *start && t.timestamp < *end)
                .filter(|t| area.contains(t.lat, t.lon))
                .filter(|t| predictions.is_none_or(|p| is_protest(t.image_id.as_deref(), p)))
                .collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateConfig {
    /// Violence score strictly above which a protest image is violent.
    pub violence_cutoff: f64,
    /// Tags counted for the hashtag rate.
    pub hashtags: Vec<String>,
}

impl Default for RateConfig {
    fn default() -> Self {
        RateConfig { violence_cutoff: DEFAULT_VIOLENCE_CUTOFF, hashtags: Vec::new() }
    }
}

/// Per-region counts, normalized by the distinct users seen in the region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionStats {
    pub region: String,
    pub n_tweets: usize,
    pub n_users: usize,
    /// Posts whose image has a prediction.
    pub n_with_images: usize,
    pub n_violent: usize,
    pub n_hashtag: usize,
    /// `n_violent / n_users`; `None` when the region has no users.
    pub rate: Option<f64>,
    /// `n_hashtag / n_users`; `None` when the region has no users.
    pub hashtag_rate: Option<f64>,
}

/// One row per region in input order, plus an [`UNASSIGNED`] row when any
/// post falls outside every region.
pub fn region_rates(
    tweets: &[GeoTweet],
    predictions: &PredictionIndex,
    regions: &[Region],
    config: &RateConfig,
) -> Vec<RegionStats> {
    struct Acc<'a> {
        users: BTreeSet<&'a str>,
        n_tweets: usize,
        n_with_images: usize,
        n_violent: usize,
        n_hashtag: usize,
    }
    let mut tags = config.hashtags.clone();
    tags.sort();
    let mut accs: Vec<Acc> = (0..=regions.len())
        .map(|_| Acc { users: BTreeSet::new(), n_tweets: 0, n_with_images: 0, n_violent: 0, n_hashtag: 0 })
        .collect();
    for t in tweets {
        let slot = regions.iter().position(|r| r.contains(t.lat, t.lon)).unwrap_or(regions.len());
        let acc = &mut accs[slot];
        acc.n_tweets += 1;
        acc.users.insert(&t.user_id);
        if let Some(p) = t.image_id.as_deref().and_then(|id| predictions.get(id)) {
            acc.n_with_images += 1;
            if p.protest >= PROTEST_CUTOFF && p.violence > config.violence_cutoff {
                acc.n_violent += 1;
            }
        }
        if t.has_any_tag(&tags) {
            acc.n_hashtag += 1;
        }
    }
    let unassigned_used = accs[regions.len()].n_tweets > 0;
    accs.into_iter()
        .enumerate()
        .filter(|(i, _)| *i < regions.len() || unassigned_used)
        .map(|(i, acc)| {
            let n_users = acc.users.len();
            let per_user = |count: usize| (n_users > 0).then(|| count as f64 / n_users as f64);
            RegionStats {
                region: regions.get(i).map_or(String::from(UNASSIGNED), |r| r.name.clone()),
                n_tweets: acc.n_tweets,
                n_users,
                n_with_images: acc.n_with_images,
                n_violent: acc.n_violent,
                n_hashtag: acc.n_hashtag,
                rate: per_user(acc.n_violent),
                hashtag_rate: per_user(acc.n_hashtag),
            }
        })
        .collect()
}

/// Box-plot statistics. Quartiles use linear interpolation between order
/// statistics (type 7); whiskers sit at the most extreme data points within
/// 1.5 IQR of the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSummary {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub lower_whisker: f64,
    pub upper_whisker: f64,
    pub mean: f64,
    pub n: usize,
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = libm::floor(h) as usize;
    let frac = h - lo as f64;
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

pub fn distribution_summary(values: &[f64]) -> Result<DistributionSummary> {
    if values.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Range(alloc::format!("non-finite value {bad}")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let lower_whisker = *sorted.iter().find(|&&v| v >= lo_fence).expect("q1 lies within the data");
    let upper_whisker = *sorted.iter().rev().find(|&&v| v <= hi_fence).expect("q3 lies within the data");
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    Ok(DistributionSummary { q1, median, q3, lower_whisker, upper_whisker, mean, n: sorted.len() })
}

/// Counts of `values` in `n_bins` equal-width bins over `[0, 1]`; every bin is
/// `[lo, hi)` except the last, which also takes 1.0.
pub fn score_histogram(values: &[f64], n_bins: usize) -> Result<Vec<usize>> {
    if n_bins == 0 {
        return Err(Error::Config("histogram needs at least one bin".into()));
    }
    let mut counts = vec![0; n_bins];
    for &v in values {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Range(alloc::format!("histogram value {v} outside [0, 1]")));
        }
        let bin = (libm::floor(v * n_bins as f64) as usize).min(n_bins - 1);
        counts[bin] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scores::{index_predictions, PredictionRecord};
    use alloc::string::ToString;

    fn tweet(id: &str, user: &str, lat: f64, lon: f64, text: &str, image: Option<&str>) -> GeoTweet {
        GeoTweet {
            tweet_id: id.into(),
            user_id: user.into(),
            timestamp: 0,
            lat,
            lon,
            text: text.into(),
            hashtags: extract_hashtags(text),
            image_id: image.map(Into::into),
        }
    }

    fn pred(id: &str, protest: f64, violence: f64) -> PredictionRecord {
        let mut s = [0.0; 16];
        s[0] = protest;
        s[1] = violence;
        PredictionRecord::from_scores(id, s)
    }

    #[test]
    fn hashtags() {
        assert_eq!(extract_hashtags("end #policeshooting"), vec!["policeshooting"]);
        assert_eq!(
            extract_hashtags("#BlackLivesMatter okay #WhiteLivesMatter #blacklivesmatter"),
            vec!["blacklivesmatter", "whitelivesmatter"]
        );
        assert!(extract_hashtags("# nothing here ##").is_empty());
        assert_eq!(extract_hashtags("a#b_c!d"), vec!["b_c"]);
    }

    #[test]
    fn region_membership() {
        let sq = Region::square("sq", 0.0, 0.0, 1.0).unwrap();
        let regions = [sq];
        assert_eq!(assign_region(0.5, 0.5, &regions), "sq");
        assert_eq!(assign_region(0.0, 0.3, &regions), "sq");
        assert_eq!(assign_region(1.0, 1.0, &regions), "sq");
        assert_eq!(assign_region(0.7, 1.0, &regions), "sq");
        assert_eq!(assign_region(1.5, 0.5, &regions), UNASSIGNED);
    }

    #[test]
    fn holes_use_even_odd() {
        let outer = vec![(0.0, 0.0), (0.0, 4.0), (4.0, 4.0), (4.0, 0.0), (0.0, 0.0)];
        let hole = vec![(1.0, 1.0), (1.0, 3.0), (3.0, 3.0), (3.0, 1.0), (1.0, 1.0)];
        let r = Region::new("ring", vec![outer, hole]).unwrap();
        assert!(r.contains(0.5, 0.5));
        assert!(!r.contains(2.0, 2.0));
        assert!(r.contains(1.0, 2.0));
    }

    #[test]
    fn degenerate_rings() {
        assert!(Region::new("x", vec![]).is_err());
        assert!(Region::new("x", vec![vec![(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]]).is_err());
        assert!(Region::new("x", vec![vec![(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.5, 0.0)]]).is_err());
    }

    #[test]
    fn hashtag_event() {
        let tweets = [
            tweet("1", "u", 0.0, 0.0, "#BlackLivesMatter okay #WhiteLivesMatter", None),
            tweet("2", "u", 0.0, 0.0, "#womensmarch", None),
        ];
        let spec = EventSpec { name: "blm".into(), mode: EventMode::Hashtag(vec!["blacklivesmatter".into()]) };
        let hits = filter_event(&tweets, &spec, &[], None).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].tweet_id, "1");
    }

    #[test]
    fn region_window_event() {
        let region = Region::square("caracas", 10.0, -67.0, 1.0).unwrap();
        let mut tweets = vec![
            tweet("in", "u", 10.5, -66.5, "", Some("a")),
            tweet("end", "u", 10.5, -66.5, "", Some("a")),
            tweet("out", "u", 20.0, -66.5, "", Some("a")),
            tweet("calm", "u", 10.5, -66.5, "", Some("b")),
        ];
        tweets[0].timestamp = 100;
        tweets[1].timestamp = 200;
        tweets[2].timestamp = 150;
        tweets[3].timestamp = 150;
        let spec = |require_protest| EventSpec {
            name: "ve".into(),
            mode: EventMode::RegionWindow { region: "caracas".into(), start: 100, end: 200, require_protest },
        };
        let regions = [region];
        let ids = |v: Vec<&GeoTweet>| v.iter().map(|t| t.tweet_id.clone()).collect::<Vec<_>>();
        assert_eq!(ids(filter_event(&tweets, &spec(false), &regions, None).unwrap()), vec!["in", "calm"]);
        let preds = index_predictions([pred("a", 0.9, 0.2), pred("b", 0.1, 0.2)]).unwrap();
        assert_eq!(ids(filter_event(&tweets, &spec(true), &regions, Some(&preds)).unwrap()), vec!["in"]);
        assert!(matches!(filter_event(&tweets, &spec(true), &regions, None), Err(Error::Config(_))));
        assert!(matches!(filter_event(&tweets, &spec(false), &[], None), Err(Error::Config(_))));
    }

    #[test]
    fn rates_per_user() {
        let regions = [Region::square("r", 0.0, 0.0, 1.0).unwrap()];
        let tweets = [
            tweet("1", "alice", 0.5, 0.5, "#blm", Some("a")),
            tweet("2", "alice", 0.5, 0.5, "", Some("b")),
            tweet("3", "bob", 0.5, 0.5, "", Some("c")),
            tweet("4", "bob", 0.5, 0.5, "", Some("d")),
        ];
        let preds = index_predictions([
            pred("a", 0.9, 0.8),
            pred("b", 0.9, 0.7),
            pred("c", 0.9, 0.6),
            pred("d", 0.9, 0.1),
        ])
        .unwrap();
        let cfg = RateConfig { hashtags: vec!["blm".into()], ..RateConfig::default() };
        let stats = region_rates(&tweets, &preds, &regions, &cfg);
        assert_eq!(stats.len(), 1);
        let s = &stats[0];
        assert_eq!((s.n_tweets, s.n_users, s.n_violent, s.n_hashtag), (4, 2, 3, 1));
        assert_eq!(s.rate, Some(1.5));
        assert_eq!(s.hashtag_rate, Some(0.5));

        let calm = index_predictions([pred("a", 0.9, 0.1)]).unwrap();
        let stats = region_rates(&tweets, &calm, &regions, &cfg);
        assert_eq!(stats[0].rate, Some(0.0));
    }

    #[test]
    fn empty_region_has_undefined_rate() {
        let regions = [Region::square("r", 0.0, 0.0, 1.0).unwrap(), Region::square("far", 50.0, 50.0, 1.0).unwrap()];
        let tweets = [tweet("1", "u", 0.5, 0.5, "", None), tweet("2", "v", -5.0, 0.5, "", None)];
        let stats = region_rates(&tweets, &PredictionIndex::new(), &regions, &RateConfig::default());
        assert_eq!(stats.len(), 3);
        assert_eq!(stats[1].rate, None);
        assert_eq!(stats[2].region, UNASSIGNED.to_string());
        assert_eq!(stats[2].n_tweets, 1);
    }

    #[test]
    fn summaries() {
        let c = distribution_summary(&[0.4; 7]).unwrap();
        assert_eq!((c.q1, c.median, c.q3, c.lower_whisker, c.upper_whisker), (0.4, 0.4, 0.4, 0.4, 0.4));
        let one = distribution_summary(&[2.5]).unwrap();
        assert_eq!((one.q1, one.median, one.q3, one.mean, one.n), (2.5, 2.5, 2.5, 2.5, 1));
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        let s = distribution_summary(&v).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (25.75, 50.5, 75.25));
        assert_eq!((s.lower_whisker, s.upper_whisker), (1.0, 100.0));
        assert_eq!(distribution_summary(&[]), Err(Error::InsufficientSamples { needed: 1, got: 0 }));
    }

    #[test]
    fn whiskers_exclude_outliers() {
        let s = distribution_summary(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        // q1 = 2, q3 = 4, upper fence 7
        assert_eq!(s.upper_whisker, 4.0);
        assert_eq!(s.lower_whisker, 1.0);
    }

    #[test]
    fn brute_force_quantiles() {
        // Type 7 = the value whose position (n-1)p interpolates between neighbours.
        let v = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let mut sorted = v.to_vec();
        sorted.sort_by(f64::total_cmp);
        let s = distribution_summary(&v).unwrap();
        // (n-1)p = 1.75, 3.5, 5.25
        assert_eq!(s.q1, 1.0 + 0.75 * (2.0 - 1.0));
        assert_eq!(s.median, 3.0 + 0.5 * (4.0 - 3.0));
        assert_eq!(s.q3, 5.0 + 0.25 * (6.0 - 5.0));
    }

    #[test]
    fn histograms() {
        let h = score_histogram(&[0.0, 1.0], 10).unwrap();
        assert_eq!((h[0], h[9], h.iter().sum::<usize>()), (1, 1, 2));
        let grid: Vec<f64> = (0..100).map(|i| f64::from(i) / 100.0).collect();
        assert_eq!(score_histogram(&grid, 10).unwrap(), vec![10; 10]);
        assert!(matches!(score_histogram(&[1.2], 10), Err(Error::Range(_))));
        assert!(score_histogram(&[0.2], 0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn histogram_conserves_counts(values in proptest::collection::vec(0.0f64..=1.0, 0..200), bins in 1usize..40) {
            proptest::prop_assert_eq!(score_histogram(&values, bins).unwrap().iter().sum::<usize>(), values.len());
        }

        #[test]
        fn quartiles_bracket_median(values in proptest::collection::vec(-1e3f64..1e3, 1..200)) {
            let s = distribution_summary(&values).unwrap();
            proptest::prop_assert!(s.lower_whisker <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.upper_whisker);
        }

        #[test]
        fn rates_ignore_order(seed in 0u64..500) {
            use rand::{Rng, SeedableRng, seq::SliceRandom};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let regions = [Region::square("a", 0.0, 0.0, 1.0).unwrap(), Region::square("b", 2.0, 0.0, 1.0).unwrap()];
            let mut preds = Vec::new();
            let mut tweets = Vec::new();
            for i in 0..40 {
                let id = alloc::format!("img{i}");
                preds.push(pred(&id, rng.random(), rng.random()));
                let lat = rng.random_range(-0.5..3.5);
                tweets.push(tweet(&i.to_string(), &alloc::format!("u{}", i % 7), lat, 0.5, "", Some(&id)));
            }
            let preds = index_predictions(preds).unwrap();
            let base = region_rates(&tweets, &preds, &regions, &RateConfig::default());
            tweets.shuffle(&mut rng);
            proptest::prop_assert_eq!(&region_rates(&tweets, &preds, &regions, &RateConfig::default()), &base);
            for s in &base {
                proptest::prop_assert!(s.n_violent <= s.n_with_images);
            }
        }
    }
}
