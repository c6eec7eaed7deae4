"""Precomputed half-range Hermite Gauss rules (Golub-Welsch).

Generated by tools/gen_halfrange_tables.py; see quadrature.py.
"""

TABLES = {
    8: (
        [0.052978643931851128, 0.26739837216776535, 0.6163028841823999, 1.064246312116224, 1.5888558622700553, 2.1839211530958586, 2.8631338837080749, 3.6860071627243969],
        [0.13410918845335956, 0.26833075447263902, 0.27595339798842182, 0.15744828261879035, 0.044814109917462927, 0.0053679357560253336, 0.00020206364913241077, 1.1925969265953436e-6],
    ),
    10: (
        [0.038738524325699388, 0.19823330401294882, 0.46520111181450692, 0.81686188559190732, 1.2345413240277401, 1.7067981496886491, 2.2299400889244399, 2.8091037468982532, 3.4638724194953725, 4.2553618063656125],
        [0.098552097519036164, 0.20867806660807571, 0.25205168840372503, 0.19868434003846, 0.097198422760154969, 0.027024416435587183, 0.0038046496225037242, 0.00022888624304529752, 4.3453447984594515e-6, 1.2477371481832517e-8],
    ),
    15: (
        [0.021686942698851219, 0.11268419695264204, 0.27049262038899756, 0.48690228923427359, 0.75304357423051872, 1.060930872005833, 1.4042548093705782, 1.7786462185204429, 2.1817079628455132, 2.613060672513555, 3.0746179394974992, 3.5714079774673487, 4.1137359184559929, 4.7235128949706533, 5.4604887738648577],
        [0.055443354299712606, 0.12402771569560285, 0.17529092095371612, 0.19148833259239611, 0.16347380949694647, 0.10593766037807834, 0.05002704004358421, 0.016442978004616527, 0.0035732067930689244, 0.00048289694247755389, 3.749090518569465e-5, 1.493685973281742e-6, 2.5527085813264932e-8, 1.3421789241148726e-10, 9.5622914518487486e-14],
    ),
    20: (
        [0.014279509699916748, 0.074631300392191371, 0.18086156305803827, 0.32943335606428832, 0.51605054306153028, 0.73625545758089084, 0.98587357503752716, 1.2612890161027662, 1.55957964520966, 1.8785619193029804, 2.2167941653876454, 2.5735778208262785, 2.9489897467872329, 3.3439813798616392, 3.7605999329107743, 4.2024426004211382, 4.675608847794477, 5.1909016869750004, 5.7699851655677558, 6.4705583870645766],
        [0.03656792163200836, 0.083317534401677622, 0.12395417854119236, 0.15102858000702282, 0.15641446700455091, 0.13699223495513453, 0.099529247247220048, 0.058533770697906252, 0.027135780375560486, 0.0096447336592154057, 0.0025517150915688127, 0.00048644899766090204, 6.4351451799896233e-5, 5.6423914895260908e-6, 3.0908365223277049e-7, 9.7564110534209132e-9, 1.5760867173927211e-10, 1.075945746737234e-12, 2.169863546275847e-15, 5.3112230616773393e-19],
    ),
    32: (
        [0.0071621303644661208, 0.03761400955200059, 0.091908832621487907, 0.16925956020914929, 0.26859758225685921, 0.38865812954809495, 0.52806039004537804, 0.6853815321410674, 0.85921944541231466, 1.0482416457678493, 1.251220309965909, 1.4670550984880731, 1.694786278746173, 1.9336008777265692, 2.1828344281138147, 2.4419705420131879, 2.7106402062583332, 2.988622442193247, 3.2758478763825756, 3.5724068855638556, 3.8785643917983851, 4.1947842417148004, 4.5217676999890841, 4.8605135176687967, 5.2124125670297945, 5.5794010258961075, 5.9642195365118079, 6.3708805847848037, 6.805591106085746, 7.2788294508328637, 7.811093484044251, 8.4563079149453293],
        [0.018365282155480448, 0.042415957917110817, 0.065425461929708454, 0.086040917140330234, 0.102271359704038, 0.11174596374692707, 0.11243817400149695, 0.10365701192549457, 0.08681615099928837, 0.06538537726512686, 0.043796200444009192, 0.025793307752470641, 0.013202895001896461, 0.0058058009479065375, 0.0021675245009380521, 0.0006787839260392172, 0.00017608013052630824, 3.7335040791200954e-5, 6.3780429985946208e-6, 8.6395543292335028e-7, 9.1134937330187608e-8, 7.3314729713544504e-9, 4.3879482153681291e-10, 1.8960694494934272e-11, 5.6979694299195498e-13, 1.1349734373178114e-14, 1.4055112554753009e-16, 9.8952729652424803e-19, 3.4676122001486546e-21, 4.8715188307266657e-24, 1.8251964514225297e-27, 6.5629954327874643e-32],
    ),
    48: (
        [0.0039304802495071665, 0.020679034948128002, 0.050688018129519587, 0.093758200699782388, 0.14960315402387083, 0.21786470530290731, 0.29812544936318191, 0.38992186991071711, 0.49275762553369816, 0.60611637524342776, 0.72947362668883335, 0.8623072484934302, 1.0041064476127777, 1.1543791524069855, 1.3126578524759045, 1.4785040246342782, 1.6515113229635902, 1.8313077346758159, 2.0175569086513191, 2.2099588559732665, 2.408250206822387, 2.6122041899348061, 2.8216304826416803, 3.0363750636009434, 3.2563201883489754, 3.4813846010069958, 3.7115240950200382, 3.9467325429976613, 4.1870435323648275, 4.4325327723190191, 4.6833214827194962, 4.9395810436176558, 5.2015392857245149, 5.4694889543060028, 5.7437991100975923, 6.0249305888625316, 6.3134572102000531, 6.6100953584444206, 6.915746141732375, 7.2315571400953363, 7.5590159771659833, 7.9000982823905075, 8.2575146137199417, 8.6351523385642642, 9.0389442339354043, 9.478819490765157, 9.9740966311038579, 10.575427841255181],
        [0.010083242484415106, 0.023393383828777152, 0.036486864216703569, 0.049078361524042557, 0.060743478452510336, 0.070889115927941281, 0.078785996091883832, 0.083662957006802782, 0.084862030147065168, 0.082029280120401468, 0.075287768893047521, 0.065321684790455374, 0.053312544749560051, 0.040716774002261567, 0.028943507517172399, 0.019045475030717119, 0.011537582760786434, 0.0063994525756305222, 0.0032322553623619694, 0.001478556940156723, 0.00060921667997010516, 0.00022486587372447997, 7.3939906149621703e-5, 2.1536375306060859e-5, 5.5241519716972824e-6, 1.2402753889698527e-6, 2.4219134766479714e-7, 4.0855255264916673e-8, 5.9106765613245005e-9, 7.276429573994204e-10, 7.5572652469651264e-11, 6.5593217561384285e-12, 4.7076532111983243e-13, 2.7606655251513662e-14, 1.3048677712688964e-15, 4.8935518752459102e-17, 1.4295012944003516e-18, 3.1823412968042891e-20, 5.2582833295145804e-22, 6.2426627520295621e-24, 5.1117811396531674e-26, 2.738309111055288e-28, 8.9397812465235732e-31, 1.61047330315618e-33, 1.3802768231286962e-36, 4.4169946180806089e-40, 3.3362954876702627e-44, 1.8689624893413435e-49],
    ),
    64: (
        [0.0025632227904479729, 0.013494225858531375, 0.033114324238215923, 0.061350729438295925, 0.098094720923410214, 0.14320735788230669, 0.1965226133701957, 0.25785065719031602, 0.32698137796594404, 0.40368804966897315, 0.48773102895985878, 0.57886137749913244, 0.67682431928677096, 0.7813624621948286, 0.89221873276884868, 1.0091389924758555, 1.1318743207717236, 1.2601829649782167, 1.3938319686962091, 1.5325984993252387, 1.6762709014115083, 1.8246495063430346, 1.9775472307573311, 2.1347899963467996, 2.2962170029440193, 2.4616808852059874, 2.6310477812030629, 2.8041973390096307, 2.9810226851920504, 3.1614303770529953, 3.3453403587414228, 3.5326859399694912, 3.7234138151709331, 3.9174841405628302, 4.1148706868118944, 4.315561085950105, 4.51955719295382, 4.7268755851597393, 4.9375482266685648, 5.1516233304025567, 5.3691664579869659, 5.5902619077565889, 5.8150144548610616, 6.0435515259752931, 6.2760259164429138, 6.5126191926492817, 6.7535459713431177, 6.9990593371100329, 7.2494577595945617, 7.5050940199464347, 7.7663868785712641, 8.0338365596514579, 8.3080456724842196, 8.5897480810863915, 8.87984974673733, 9.1794882482760324, 9.4901226758770535, 9.813675464661701, 10.152768752011549, 10.511146960731144, 10.894506959784238, 11.312361933267729, 11.783191727027236, 12.355393831056901],
        [0.0065767291598576802, 0.015281232518928029, 0.023917445859480474, 0.032388804326508786, 0.040561641766980513, 0.048244093031327417, 0.055182209394867623, 0.061067686904033519, 0.065559804203111551, 0.068322892221992177, 0.069077399309432912, 0.067657974639161232, 0.064067111738416124, 0.058509702417663616, 0.051394554096530438, 0.043294942607889891, 0.034871049315528747, 0.026769543480926536, 0.019524691162766746, 0.013486644179552726, 0.0087944246098967392, 0.005396414385361247, 0.0031060913875934334, 0.0016716999500417959, 0.00083862646852697408, 0.0003909138133692048, 0.00016878503453129317, 6.7292057459840313e-5, 2.4694514172990444e-5, 8.3149858904285344e-6, 2.5606228579685492e-6, 7.1882865182936432e-7, 1.8333235121467978e-7, 4.2333266432182328e-8, 8.8185053808561766e-9, 1.6510329179007212e-9, 2.76734902099786e-10, 4.1355028648592513e-11, 5.4859329269014141e-12, 6.4299364498506817e-13, 6.6256244726139641e-14, 5.9699429682308738e-15, 4.6762409903045425e-16, 3.1639828860631929e-17, 1.8362672589321331e-18, 9.0705636462557903e-20, 3.780768294089226e-21, 1.3169500684155459e-22, 3.7918528603773268e-24, 8.9127731069552805e-26, 1.6858786687097206e-27, 2.5237969354577645e-29, 2.9321493580132916e-31, 2.5827182676974983e-33, 1.6766615041594869e-35, 7.7471748933020423e-38, 2.438184692789206e-40, 4.936837592099204e-43, 5.9572599528804282e-46, 3.8473062450599815e-49, 1.1322492221568722e-52, 1.1668184669903602e-56, 2.5538559248814479e-61, 3.3425707679625132e-67],
    ),
}
