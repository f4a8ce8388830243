// Built-in valences on a -4..4 scale. Compact and domain-focused: conflict,
// policing, fear, grief and their positive counterparts.
pub(super) const VALENCES: &[(&str, f64)] = &[
    // violence and harm
    ("violence", -3.1), ("violent", -2.9), ("attack", -2.1), ("attacked", -2.1), ("attacks", -2.0),
    ("kill", -3.7), ("killed", -3.5), ("killing", -3.4), ("kills", -3.4), ("killer", -3.3),
    ("murder", -3.7), ("murdered", -3.6), ("murders", -3.5), ("shoot", -1.9), ("shooting", -2.6),
    ("shootings", -2.7), ("shot", -1.8), ("gun", -1.4), ("guns", -1.4), ("bomb", -2.2),
    ("bombing", -2.8), ("blood", -1.9), ("bloody", -2.2), ("bleeding", -2.1), ("brutal", -3.1),
    ("brutality", -3.0), ("beat", -1.2), ("beaten", -2.3), ("beating", -2.3), ("assault", -2.9),
    ("assaulted", -2.9), ("abuse", -3.2), ("abused", -3.1), ("torture", -3.5), ("tortured", -3.4),
    ("riot", -2.6), ("riots", -2.6), ("rioting", -2.6), ("looting", -2.5), ("looted", -2.4),
    ("fire", -1.4), ("burn", -1.9), ("burning", -2.0), ("burned", -2.0), ("destroy", -2.8),
    ("destroyed", -2.9), ("destruction", -2.7), ("chaos", -2.1), ("clash", -1.8), ("clashes", -1.8),
    ("war", -2.9), ("wars", -2.6), ("weapon", -1.9), ("weapons", -1.9), ("wound", -2.1),
    ("wounded", -2.2), ("injured", -2.1), ("injury", -2.1), ("injuries", -2.1), ("hurt", -2.4),
    ("hurts", -2.3), ("pain", -2.3), ("painful", -2.4), ("dead", -3.3), ("death", -2.9),
    ("deaths", -2.8), ("die", -2.9), ("died", -2.6), ("dying", -2.9), ("victim", -2.4),
    ("victims", -2.4), ("terror", -3.0), ("terrorist", -3.3), ("terrorism", -3.3), ("threat", -2.4),
    ("threaten", -2.4), ("threatened", -2.3), ("danger", -2.4), ("dangerous", -2.1), ("crime", -2.5),
    ("criminal", -2.4), ("criminals", -2.4), ("gas", -0.6), ("teargas", -2.2), ("arrest", -1.4),
    ("arrested", -2.1), ("arrests", -1.9), ("prison", -2.3), ("jail", -1.8), ("jailed", -2.2),
    ("crackdown", -2.3), ("repression", -2.6), ("oppression", -2.8), ("oppressed", -2.7), ("tyranny", -2.9),
    ("dictator", -2.6), ("corrupt", -2.6), ("corruption", -2.7), ("fraud", -2.4), ("injustice", -2.7),
    ("unjust", -2.3), ("racism", -3.1), ("racist", -3.1), ("racists", -3.1), ("bigot", -2.9),
    ("discrimination", -2.6), ("hate", -2.7), ("hated", -3.2), ("hates", -1.9), ("hateful", -2.2),
    ("hatred", -3.2), ("enemy", -2.5), ("enemies", -2.2), ("evil", -3.4), ("cruel", -2.8),
    ("savage", -2.0), ("thug", -2.0), ("thugs", -2.2), ("vandalism", -2.2), ("mob", -1.6),
    // anger
    ("angry", -2.3), ("anger", -2.7), ("angered", -2.3), ("rage", -2.6), ("raging", -2.6),
    ("furious", -2.7), ("fury", -2.6), ("mad", -2.2), ("outrage", -2.3), ("outraged", -2.5),
    ("outrageous", -2.0), ("hostile", -2.2), ("aggressive", -0.6), ("bitter", -1.8), ("disgust", -2.9),
    ("disgusting", -2.4), ("disgusted", -2.4), ("annoyed", -1.6), ("irritated", -1.8), ("frustrated", -2.4),
    ("frustration", -2.1), ("resent", -1.9), ("shame", -2.1), ("shameful", -2.2), ("disgrace", -2.2),
    ("stupid", -2.4), ("idiot", -2.3), ("idiots", -2.3), ("liar", -2.8), ("liars", -2.8),
    ("lies", -1.8), ("damn", -1.7), ("damned", -1.6), ("sucks", -1.5), ("worst", -3.1),
    ("terrible", -2.1), ("horrible", -2.5), ("awful", -2.0), ("bad", -2.5), ("worse", -2.1),
    ("ugly", -2.3), ("nasty", -2.6), ("vile", -3.1), ("wrong", -2.1), ("fail", -2.5),
    ("failed", -2.3), ("failure", -2.3), ("blame", -1.4), ("condemn", -1.6), ("protest", -1.0),
    ("protests", -0.9), ("protesting", -1.2), ("fight", -1.6), ("fighting", -1.8), ("fought", -1.3),
    ("resist", -0.7), ("revolt", -1.6), ("unrest", -1.8),
    // fear
    ("fear", -2.2), ("fears", -1.8), ("feared", -2.2), ("fearful", -2.2), ("afraid", -2.0),
    ("scared", -2.2), ("scary", -2.2), ("terrified", -3.0), ("terrifying", -2.7), ("panic", -2.3),
    ("panicked", -2.0), ("horror", -2.7), ("horrific", -3.4), ("nightmare", -2.5), ("anxious", -1.0),
    ("anxiety", -0.7), ("worried", -1.2), ("worry", -1.9), ("nervous", -1.1), ("alarm", -1.4),
    ("alarming", -1.9), ("unsafe", -2.0), ("risk", -1.1), ("trapped", -2.4), ("helpless", -2.0),
    ("desperate", -1.3), ("emergency", -1.6),
    // sadness
    ("sad", -2.1), ("sadly", -1.8), ("sadness", -1.9), ("grief", -2.2), ("grieve", -1.6),
    ("grieving", -1.5), ("mourn", -1.8), ("mourning", -1.9), ("tragic", -3.4), ("tragedy", -3.4),
    ("tears", -0.9), ("cry", -2.1), ("crying", -2.1), ("cried", -1.6), ("heartbroken", -3.3),
    ("heartbreaking", -2.9), ("broken", -1.9), ("loss", -1.3), ("lost", -1.3), ("lonely", -1.5),
    ("miserable", -2.2), ("misery", -2.7), ("depressed", -2.3), ("depressing", -1.6), ("sorrow", -2.4),
    ("suffer", -2.5), ("suffering", -2.1), ("hopeless", -2.0), ("despair", -1.3), ("poor", -2.1),
    ("sick", -2.3), ("unfair", -2.1), ("sorry", -0.3), ("rip", -0.8),
    // positive
    ("good", 1.9), ("great", 3.1), ("nice", 1.8), ("happy", 2.7), ("happiness", 2.6),
    ("joy", 2.8), ("joyful", 2.9), ("glad", 2.0), ("love", 3.2), ("loved", 2.9),
    ("loves", 2.7), ("loving", 2.9), ("lovely", 2.8), ("beautiful", 2.9), ("wonderful", 2.7),
    ("amazing", 2.8), ("awesome", 3.1), ("excellent", 2.7), ("fantastic", 2.6), ("best", 3.2),
    ("better", 1.9), ("win", 2.8), ("won", 2.7), ("victory", 2.8), ("success", 2.7),
    ("successful", 2.8), ("proud", 2.1), ("pride", 1.4), ("hope", 1.9), ("hopeful", 1.6),
    ("peace", 2.5), ("peaceful", 2.2), ("peacefully", 2.2), ("calm", 1.3), ("safe", 1.9),
    ("safety", 1.8), ("free", 2.3), ("freedom", 3.2), ("justice", 2.4), ("fair", 1.3),
    ("equality", 1.9), ("rights", 1.4), ("support", 1.7), ("supported", 1.3), ("supporting", 1.9),
    ("solidarity", 1.2), ("unity", 1.6), ("united", 1.8), ("together", 1.0), ("strong", 2.3),
    ("strength", 2.2), ("brave", 2.4), ("courage", 2.2), ("courageous", 2.4), ("inspiring", 2.2),
    ("inspired", 2.2), ("inspiration", 2.4), ("celebrate", 2.7), ("celebrating", 2.7), ("celebration", 2.4),
    ("fun", 2.3), ("smile", 1.5), ("smiles", 1.5), ("smiling", 1.6), ("laugh", 2.6),
    ("laughing", 2.2), ("thank", 1.5), ("thanks", 1.9), ("grateful", 2.0), ("kind", 2.4),
    ("kindness", 2.1), ("care", 2.2), ("caring", 2.2), ("friend", 2.2), ("friends", 2.1),
    ("family", 1.0), ("help", 1.7), ("helping", 1.2), ("heal", 1.4), ("healing", 1.5),
    ("respect", 2.1), ("honor", 2.2), ("honest", 2.3), ("trust", 2.3), ("positive", 2.6),
    ("powerful", 1.8), ("empower", 1.6), ("empowered", 1.5), ("empowering", 1.9), ("yes", 1.7),
    ("okay", 0.9), ("ok", 1.2), ("cool", 1.3), ("excited", 1.4), ("exciting", 2.2),
    ("blessed", 2.9), ("wow", 2.8), ("agree", 1.5), ("matter", 0.2),
];

/// Additive intensity shifts applied to the next valenced token.
pub(super) const BOOSTERS: &[(&str, f64)] = &[
    ("absolutely", 0.293), ("completely", 0.293), ("deeply", 0.293), ("enormously", 0.293),
    ("entirely", 0.293), ("especially", 0.293), ("extremely", 0.293), ("highly", 0.293),
    ("incredibly", 0.293), ("most", 0.293), ("really", 0.293), ("so", 0.293),
    ("terribly", 0.293), ("totally", 0.293), ("truly", 0.293), ("utterly", 0.293),
    ("very", 0.293), ("super", 0.293), ("hugely", 0.293), ("seriously", 0.293),
    ("barely", -0.293), ("hardly", -0.293), ("kinda", -0.293), ("less", -0.293),
    ("little", -0.293), ("marginally", -0.293), ("occasionally", -0.293), ("partly", -0.293),
    ("scarcely", -0.293), ("slightly", -0.293), ("somewhat", -0.293), ("sorta", -0.293),
];

pub(super) const NEGATIONS: &[&str] = &[
    "not", "no", "never", "nor", "none", "nobody", "nothing", "neither", "nowhere", "without",
    "cannot", "cant", "can't", "dont", "don't", "doesnt", "doesn't", "didnt", "didn't", "isnt",
    "isn't", "arent", "aren't", "wasnt", "wasn't", "werent", "weren't", "wont", "won't", "wouldnt",
    "wouldn't", "shouldnt", "shouldn't", "couldnt", "couldn't", "aint", "ain't", "hasnt", "hasn't",
    "havent", "haven't", "hadnt", "hadn't", "neednt", "needn't",
];
