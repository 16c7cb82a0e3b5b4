// Reference rows for the arithmeticity word tables: each entry is the
// squared subset word (element, trace) followed by the product of squared
// generators (element, trace).

pub type Row = ((i64, i64, i64, i64), i64, (i64, i64, i64, i64), i64);

pub fn diamond5_rows() -> Vec<Row> {
    vec![
        ((11, 15, -3, -4), 7, (11, 15, -3, -4), 7),
        ((59, 45, -21, -16), 43, (59, 45, -21, -16), 43),
        ((314, 245, -91, -71), 243, (334, 255, -93, -71), 263),
        ((9, -20, -4, 9), 18, (9, -20, -4, 9), 18),
        ((29, -45, -9, 14), 43, (39, -85, -11, 24), 63),
        ((321, -575, -115, 206), 527, (351, -775, -125, 276), 627),
        ((1456, -2585, -423, 751), 2207, (1986, -4385, -553, 1221), 3207),
    ]
}

pub fn diamond25_rows() -> Vec<Row> {
    vec![
        ((11, 15, -3, -4), 7, (11, 15, -3, -4), 7),
        ((875, 825, -297, -280), 119, (875, 825, -297, -280), 119),
        ((4990, 4725, -1431, -1355), 727, (5170, 4875, -1437, -1355), 763),
        ((25, -300, -12, 145), 34, (25, -300, -12, 145), 34),
        ((65, -525, -21, 170), 47, (95, -1125, -27, 320), 83),
        ((1945, -16575, -663, 5650), 1519, (2395, -28575, -813, 9700), 2419),
        (
            (9080, -77025, -2607, 22115),
            6239,
            (14150, -168825, -3933, 46925),
            12215,
        ),
    ]
}

pub fn star3_rows() -> Vec<Row> {
    vec![
        ((24, -5, 5, -1), 23, (24, -5, 5, -1), 23),
        ((109, 33, 33, 10), 119, (109, 33, 33, 10), 119),
        ((2349, 700, 500, 149), 2498, (2451, 742, 512, 155), 2606),
        ((153, 112, 56, 41), 194, (153, 112, 56, 41), 194),
        ((3008, 2183, 649, 471), 3479, (3392, 2483, 709, 519), 3911),
        ((18177, 13261, 5513, 4022), 22199, (18525, 13561, 5609, 4106), 22631),
        (
            (379325, 276716, 80764, 58917),
            438242,
            (416555, 304934, 87016, 63699),
            480254,
        ),
        ((76, 99, 33, 43), 119, (76, 99, 33, 43), 119),
        ((1311, 1681, 287, 368), 1679, (1659, 2161, 347, 452), 2111),
        ((8689, 11220, 2640, 3409), 12098, (9373, 12210, 2838, 3697), 13070),
        (
            (175482, 226567, 37367, 48245),
            223727,
            (210762, 274555, 44027, 57353),
            268115,
        ),
        ((15048, 19519, 5513, 7151), 22199, (15324, 19963, 5609, 7307), 22631),
        (
            (280331, 363593, 60499, 78468),
            358799,
            (339731, 442577, 71011, 92508),
            432239,
        ),
        (
            (1751001, 2271148, 531080, 688841),
            2439842,
            (1855413, 2417098, 561782, 731849),
            2587262,
        ),
        (
            (35375534, 45884051, 7531999, 9769425),
            45144959,
            (41721002, 54351107, 8715283, 11353641),
            53074643,
        ),
        ((9, 25, 5, 14), 23, (9, 25, 5, 14), 23),
        ((125, 308, 28, 69), 194, (191, 530, 40, 111), 302),
        ((942, 2419, 287, 737), 1679, (1146, 3187, 347, 965), 2111),
        ((18035, 46259, 3841, 9852), 27887, (25769, 71663, 5383, 14970), 40739),
        ((1769, 4661, 649, 1710), 3479, (1937, 5393, 709, 1974), 3911),
        ((30301, 79788, 6540, 17221), 47522, (42943, 119562, 8976, 24991), 67934),
        (
            (199466, 525323, 60499, 159333),
            358799,
            (234530, 652979, 71011, 197709),
            432239,
        ),
        (
            (3817723, 10054479, 812853, 2140756),
            5958479,
            (5273665, 14682951, 1101639, 3067186),
            8340851,
        ),
        ((1149, 3100, 500, 1349), 2498, (1179, 3286, 512, 1427), 2606),
        ((17534, 47261, 3841, 10353), 27887, (25736, 71729, 5383, 15003), 40739),
        (
            (122979, 331573, 37367, 100748),
            223727,
            (145407, 405265, 44027, 122708),
            268115,
        ),
        (
            (2346761, 6327224, 499720, 1347321),
            3694082,
            (3269633, 9112820, 683008, 1903617),
            5173250,
        ),
        (
            (220445, 594476, 80764, 217797),
            438242,
            (237731, 662582, 87016, 242523),
            480254,
        ),
        (
            (3766462, 10157001, 812853, 2192017),
            5958479,
            (5270464, 14689353, 1101639, 3070387),
            8340851,
        ),
        (
            (24833423, 66968273, 7531999, 20311536),
            45144959,
            (28784207, 80224697, 8715283, 24290436),
            53074643,
        ),
        (
            (474352033, 1279184712, 100996896, 272358241),
            746710274,
            (647244553, 1803940548, 135205752, 376833049),
            1024077602,
        ),
    ]
}

pub fn star9_rows() -> Vec<Row> {
    vec![
        ((120, -11, 11, -1), 119, (120, -11, 11, -1), 119),
        ((219, 35, 25, 4), 223, (219, 35, 25, 4), 223),
        ((25865, 4104, 2376, 377), 26242, (26005, 4156, 2384, 381), 26386),
        ((281, 240, 48, 41), 322, (281, 240, 48, 41), 322),
        ((31048, 26413, 2867, 2439), 33487, (33192, 28349, 3043, 2599), 35791),
        ((61123, 52059, 6993, 5956), 67079, (63219, 53995, 7217, 6164), 69383),
        (
            (7116129, 6060760, 653720, 556769),
            7672898,
            (7506893, 6411596, 688192, 587781),
            8094674,
        ),
        ((184, 205, 35, 39), 223, (184, 205, 35, 39), 223),
        ((19599, 21707, 1813, 2008), 21607, (21695, 24171, 1989, 2216), 23911),
        ((39129, 43400, 4480, 4969), 44098, (41521, 46260, 4740, 5281), 46802),
        (
            (4533324, 5028005, 416455, 461899),
            4995223,
            (4930380, 5493109, 451991, 503579),
            5433959,
        ),
        ((59896, 66661, 10235, 11391), 71287, (60104, 66965, 10267, 11439), 71543),
        (
            (6508183, 7243123, 600989, 668856),
            7177039,
            (7099543, 7909971, 650877, 725176),
            7824719,
        ),
        (
            (12876529, 14330680, 1473200, 1639569),
            14516098,
            (13522121, 15065700, 1543668, 1719881),
            15242002,
        ),
        (
            (1491857772, 1660333661, 137048863, 152525827),
            1644383599,
            (1605674172, 1788965309, 147199663, 164002819),
            1769676991,
        ),
        ((3, 11, 1, 4), 7, (3, 11, 1, 4), 7),
        ((257, 696, 24, 65), 322, (349, 1276, 32, 117), 466),
        ((548, 1557, 63, 179), 727, (692, 2549, 79, 291), 983),
        ((61751, 175119, 5673, 16088), 77839, (82171, 302679, 7533, 27748), 109919),
        ((987, 3107, 169, 532), 1519, (1083, 4051, 185, 692), 1775),
        ((97113, 305384, 8968, 28201), 125314, (127925, 478508, 11728, 43869), 171794),
        (
            (198084, 622973, 22663, 71275),
            269359,
            (243652, 911389, 27815, 104043),
            347695,
        ),
        (
            (22248239, 69970215, 2043825, 6427784),
            28676023,
            (28932275, 108222207, 2652357, 9921236),
            38853511,
        ),
        ((713, 2312, 136, 441), 1154, (757, 2844, 144, 541), 1298),
        ((66964, 216825, 6195, 20059), 87023, (89256, 335329, 8183, 30743), 119999),
        (
            (138039, 447035, 15805, 51184),
            189223,
            (170823, 641771, 19501, 73264),
            244087,
        ),
        (
            (15482321, 50138640, 1422288, 4606001),
            20088322,
            (20284249, 76206616, 1859552, 6986217),
            27270466,
        ),
        (
            (227105, 735768, 38808, 125729),
            352834,
            (247277, 929004, 42240, 158693),
            405970,
        ),
        (
            (22270852, 72152113, 2056571, 6662787),
            28933639,
            (29208600, 109734857, 2677807, 10060351),
            39268951,
        ),
        (
            (45475199, 147328595, 5202805, 16855824),
            62331023,
            (55632063, 209006131, 6350885, 23859872),
            79491935,
        ),
        (
            (5101478761, 16527551232, 468645120, 1518296281),
            6619775042,
            (6605987825, 24818277128, 605601808, 2275207569),
            8881195394,
        ),
    ]
}
