// Tracy-Widom (beta = 2) distribution: (s, F2(s), 1 - F2(s)) on a 0.05 grid.
// Generated by tools/gen_tw2_table.py from the Fredholm determinant of the Airy kernel.

pub(crate) const TW2_KNOTS: [(f64, f64, f64); 231] = [
    (-6.50, 7.94607663159624750e-11, 9.99999999920539229e-01),
    (-6.45, 1.34330844214016297e-10, 9.99999999865669120e-01),
    (-6.40, 2.25268548947882475e-10, 9.99999999774731418e-01),
    (-6.35, 3.74761008063797772e-10, 9.99999999625239000e-01),
    (-6.30, 6.18535247702791693e-10, 9.99999999381464777e-01),
    (-6.25, 1.01287983667725336e-09, 9.99999998987120109e-01),
    (-6.20, 1.64574300239368540e-09, 9.99999998354257014e-01),
    (-6.15, 2.65340736515193032e-09, 9.99999997346592617e-01),
    (-6.10, 4.24532427865631832e-09, 9.99999995754675686e-01),
    (-6.05, 6.74077824811332037e-09, 9.99999993259221731e-01),
    (-6.00, 1.06225467415570904e-08, 9.99999989377453269e-01),
    (-5.95, 1.66147537867787631e-08, 9.99999983385246205e-01),
    (-5.90, 2.57948513084260796e-08, 9.99999974205148745e-01),
    (-5.85, 3.97533031352246668e-08, 9.99999960246696906e-01),
    (-5.80, 6.08193395256761602e-08, 9.99999939180660435e-01),
    (-5.75, 9.23773890445832902e-08, 9.99999907622610928e-01),
    (-5.70, 1.39306823727645464e-07, 9.99999860693176257e-01),
    (-5.65, 2.08587866337508727e-07, 9.99999791412133687e-01),
    (-5.60, 3.10129344414644268e-07, 9.99999689870655573e-01),
    (-5.55, 4.57889910558931072e-07, 9.99999542110089457e-01),
    (-5.50, 6.71383878992223294e-07, 9.99999328616120953e-01),
    (-5.45, 9.77686450119499569e-07, 9.99999022313549868e-01),
    (-5.40, 1.41408126887192297e-06, 9.99998585918731142e-01),
    (-5.35, 2.03152637460886942e-06, 9.99997968473625432e-01),
    (-5.30, 2.89915290775584315e-06, 9.99997100847092257e-01),
    (-5.25, 4.11005450775364595e-06, 9.99995889945492267e-01),
    (-5.20, 5.78867397254759682e-06, 9.99994211326027505e-01),
    (-5.15, 8.10014691393401136e-06, 9.99991899853086119e-01),
    (-5.10, 1.12620188742140931e-05, 9.99988737981125753e-01),
    (-5.05, 1.55588111996698850e-05, 9.99984441188800366e-01),
    (-5.00, 2.13599698474592156e-05, 9.99978640030152577e-01),
    (-4.95, 2.91417875464737453e-05, 9.99970858212453573e-01),
    (-4.90, 3.95139399742552576e-05, 9.99960486060025744e-01),
    (-4.85, 5.32513168055700949e-05, 9.99946748683194442e-01),
    (-4.80, 7.13318539441809774e-05, 9.99928668146055855e-01),
    (-4.75, 9.49810787216583195e-05, 9.99905018921278366e-01),
    (-4.70, 1.25724059679653679e-04, 9.99874275940320301e-01),
    (-4.65, 1.65445400881842518e-04, 9.99834554599118186e-01),
    (-4.60, 2.16457831734112604e-04, 9.99783542168265926e-01),
    (-4.55, 2.81579811621732071e-04, 9.99718420188378309e-01),
    (-4.50, 3.64222389678897965e-04, 9.99635777610321075e-01),
    (-4.45, 4.68485330258464603e-04, 9.99531514669741550e-01),
    (-4.40, 5.99262232381109618e-04, 9.99400737767618841e-01),
    (-4.35, 7.62354036898617868e-04, 9.99237645963101384e-01),
    (-4.30, 9.64589931069358619e-04, 9.99035410068930596e-01),
    (-4.25, 1.21395423229990994e-03, 9.98786045767700137e-01),
    (-4.20, 1.51971736959772685e-03, 9.98480282630402227e-01),
    (-4.15, 1.89256859463119830e-03, 9.98107431405368839e-01),
    (-4.10, 2.34474755915969196e-03, 9.97655252440840301e-01),
    (-4.05, 2.89017140984999463e-03, 9.97109828590149960e-01),
    (-4.00, 3.54455359550966478e-03, 9.96455446404490353e-01),
    (-3.95, 4.32551017780092011e-03, 9.95674489822199082e-01),
    (-3.90, 5.25264910790251664e-03, 9.94747350892097537e-01),
    (-3.85, 6.34763770183622428e-03, 9.93652362298163783e-01),
    (-3.80, 7.63424343876699038e-03, 9.92365756561233048e-01),
    (-3.75, 9.13834323987374429e-03, 9.90861656760126275e-01),
    (-3.70, 1.08878965773410285e-02, 9.89112103422658984e-01),
    (-3.65, 1.29128781261015849e-02, 9.87087121873898465e-01),
    (-3.60, 1.52451662120080388e-02, 9.84754833787992001e-01),
    (-3.55, 1.79183840294944996e-02, 9.82081615970505473e-01),
    (-3.50, 2.09676914927670044e-02, 9.79032308507232996e-01),
    (-3.45, 2.44295266328753979e-02, 9.75570473367124658e-01),
    (-3.40, 2.83412966369838079e-02, 9.71658703363016185e-01),
    (-3.35, 3.27410199169032787e-02, 9.67258980083096742e-01),
    (-3.30, 3.76669219562367763e-02, 9.62333078043763224e-01),
    (-3.25, 4.31569890787268651e-02, 9.56843010921273107e-01),
    (-3.20, 4.92484856600457002e-02, 9.50751514339954307e-01),
    (-3.15, 5.59774416245360021e-02, 9.44022558375464005e-01),
    (-3.10, 6.33781182799870030e-02, 9.36621881720013039e-01),
    (-3.05, 7.14824616016828812e-02, 9.28517538398317077e-01),
    (-3.00, 8.03195529393343349e-02, 9.19680447060665651e-01),
    (-2.95, 8.99150677500577256e-02, 9.10084932249942247e-01),
    (-2.90, 1.00290753327303930e-01, 8.99709246672696028e-01),
    (-2.85, 1.11463936577857983e-01, 8.88536063422141975e-01),
    (-2.80, 1.23447072684564965e-01, 8.76552927315434993e-01),
    (-2.75, 1.36247344979244706e-01, 8.63752655020755267e-01),
    (-2.70, 1.49866325546596346e-01, 8.50133674453403598e-01),
    (-2.65, 1.64299705004288366e-01, 8.35700294995711634e-01),
    (-2.60, 1.79537098584835131e-01, 8.20462901415164869e-01),
    (-2.55, 1.95561934117763958e-01, 8.04438065882236097e-01),
    (-2.50, 2.12351425819588879e-01, 7.87648574180411121e-01),
    (-2.45, 2.29876635993157469e-01, 7.70123364006842559e-01),
    (-2.40, 2.48102624869674326e-01, 7.51897375130325618e-01),
    (-2.35, 2.66988686950231813e-01, 7.33011313049768187e-01),
    (-2.30, 2.86488670372707366e-01, 7.13511329627292579e-01),
    (-2.25, 3.06551374095920204e-01, 6.93448625904079852e-01),
    (-2.20, 3.27121016103089635e-01, 6.72878983896910365e-01),
    (-2.15, 3.48137764422683516e-01, 6.51862235577316484e-01),
    (-2.10, 3.69538321581173390e-01, 6.30461678418826610e-01),
    (-2.05, 3.91256552165869242e-01, 6.08743447834130702e-01),
    (-2.00, 4.13224142505120906e-01, 5.86775857494879038e-01),
    (-1.95, 4.35371281077028327e-01, 5.64628718922971617e-01),
    (-1.90, 4.57627348137403189e-01, 5.42372651862596866e-01),
    (-1.85, 4.79921603205305858e-01, 5.20078396794694142e-01),
    (-1.80, 5.02183859444988667e-01, 4.97816140555011388e-01),
    (-1.75, 5.24345134614763730e-01, 4.75654865385236214e-01),
    (-1.70, 5.46338269088592066e-01, 4.53661730911407934e-01),
    (-1.65, 5.68098502463554422e-01, 4.31901497536445578e-01),
    (-1.60, 5.89564001410871175e-01, 4.10435998589128881e-01),
    (-1.55, 6.10676332673293909e-01, 3.89323667326706091e-01),
    (-1.50, 6.31380876420725046e-01, 3.68619123579274899e-01),
    (-1.45, 6.51627176512239337e-01, 3.48372823487760608e-01),
    (-1.40, 6.71369225542343018e-01, 3.28630774457656927e-01),
    (-1.35, 6.90565683840101086e-01, 3.09434316159898970e-01),
    (-1.30, 7.09180032813842787e-01, 2.90819967186157158e-01),
    (-1.25, 7.27180664167070612e-01, 2.72819335832929388e-01),
    (-1.20, 7.44540907533167595e-01, 2.55459092466832460e-01),
    (-1.15, 7.61238999972335240e-01, 2.38761000027664788e-01),
    (-1.10, 7.77258001533217224e-01, 2.22741998466782748e-01),
    (-1.05, 7.92585661697760679e-01, 2.07414338302239348e-01),
    (-1.00, 8.07214241999284043e-01, 1.92785758000715901e-01),
    (-0.95, 8.21140300432213421e-01, 1.78859699567786579e-01),
    (-0.90, 8.34364443463226246e-01, 1.65635556536773698e-01),
    (-0.85, 8.46891051515790361e-01, 1.53108948484209667e-01),
    (-0.80, 8.58727983744050793e-01, 1.41272016255949207e-01),
    (-0.75, 8.69886267750439424e-01, 1.30113732249560604e-01),
    (-0.70, 8.80379779647886496e-01, 1.19620220352113449e-01),
    (-0.65, 8.90224919536981463e-01, 1.09775080463018579e-01),
    (-0.60, 8.99440287075598977e-01, 1.00559712924401010e-01),
    (-0.55, 9.08046361378285649e-01, 9.19536386217143231e-02),
    (-0.50, 9.16065189009286907e-01, 8.39348109907131074e-02),
    (-0.45, 9.23520083339936959e-01, 7.64799166600630687e-02),
    (-0.40, 9.30435338040615068e-01, 6.95646619593848770e-02),
    (-0.35, 9.36835956980600293e-01, 6.31640430193997071e-02),
    (-0.30, 9.42747402325712969e-01, 5.72525976742870382e-02),
    (-0.25, 9.48195362161754374e-01, 5.18046378382455916e-02),
    (-0.20, 9.53205538538233865e-01, 4.67944614617661833e-02),
    (-0.15, 9.57803456426908784e-01, 4.21965435730911886e-02),
    (-0.10, 9.62014293727226466e-01, 3.79857062727735201e-02),
    (-0.05, 9.65862732128204726e-01, 3.41372678717952668e-02),
    (-0.00, 9.69372828355261951e-01, 3.06271716447380840e-02),
    (0.05, 9.72567905090872875e-01, 2.74320949091271145e-02),
    (0.10, 9.75470460659461747e-01, 2.45295393405382776e-02),
    (0.15, 9.78102096407849286e-01, 2.18979035921506617e-02),
    (0.20, 9.80483460590888756e-01, 1.95165394091112825e-02),
    (0.25, 9.82634207485122868e-01, 1.73657925148771597e-02),
    (0.30, 9.84572970398249092e-01, 1.54270296017508662e-02),
    (0.35, 9.86317347215723950e-01, 1.36826527842760660e-02),
    (0.40, 9.87883897124674948e-01, 1.21161028753250539e-02),
    (0.45, 9.89288147175892307e-01, 1.07118528241077066e-02),
    (0.50, 9.90544607383715969e-01, 9.45539261628404633e-03),
    (0.55, 9.91666793117927159e-01, 8.33320688207280294e-03),
    (0.60, 9.92667253608036981e-01, 7.33274639196297880e-03),
    (0.65, 9.93557605455953397e-01, 6.44239454404658615e-03),
    (0.70, 9.94348570135086152e-01, 5.65142986491381366e-03),
    (0.75, 9.95050014540237115e-01, 4.94998545976284461e-03),
    (0.80, 9.95670993740983890e-01, 4.32900625901615470e-03),
    (0.85, 9.96219795179864587e-01, 3.78020482013536469e-03),
    (0.90, 9.96703983643966396e-01, 3.29601635603359294e-03),
    (0.95, 9.97130446423169947e-01, 2.86955357683002423e-03),
    (1.00, 9.97505438149389301e-01, 2.49456185061071312e-03),
    (1.05, 9.97834624887639743e-01, 2.16537511236025411e-03),
    (1.10, 9.98123127121328113e-01, 1.87687287867193244e-03),
    (1.15, 9.98375561340117623e-01, 1.62443865988241669e-03),
    (1.20, 9.98596079999060637e-01, 1.40392000093939560e-03),
    (1.25, 9.98788409672113353e-01, 1.21159032788669676e-03),
    (1.30, 9.98955887271837262e-01, 1.04411272816278509e-03),
    (1.35, 9.99101494250047462e-01, 8.98505749952532655e-04),
    (1.40, 9.99227888731705982e-01, 7.72111268294014739e-04),
    (1.45, 9.99337435566645893e-01, 6.62564433354054282e-04),
    (1.50, 9.99432234311155132e-01, 5.67765688844877429e-04),
    (1.55, 9.99514145174375646e-01, 4.85854825624389304e-04),
    (1.60, 9.99584812983203896e-01, 4.15187016796115355e-04),
    (1.65, 9.99645689234438195e-01, 3.54310765561774118e-04),
    (1.70, 9.99698052314497487e-01, 3.01947685502476832e-04),
    (1.75, 9.99743025975703303e-01, 2.56974024296712574e-04),
    (1.80, 9.99781596164138531e-01, 2.18403835861458786e-04),
    (1.85, 9.99814626297812037e-01, 1.85373702187977376e-04),
    (1.90, 9.99842871095656061e-01, 1.57128904343913832e-04),
    (1.95, 9.99866989058051492e-01, 1.33010941948491837e-04),
    (2.00, 9.99887553698309950e-01, 1.12446301690037075e-04),
    (2.05, 9.99905063622274271e-01, 9.49363777257259149e-05),
    (2.10, 9.99919951549947617e-01, 8.00484500523794410e-05),
    (2.15, 9.99932592369170536e-01, 6.74076308294782541e-05),
    (2.20, 9.99943310307003008e-01, 5.66896929969600135e-05),
    (2.25, 9.99952385299687885e-01, 4.76147003121159303e-05),
    (2.30, 9.99960058637126337e-01, 3.99413628736295848e-05),
    (2.35, 9.99966537952720724e-01, 3.34620472792497079e-05),
    (2.40, 9.99972001624374607e-01, 2.79983756254321209e-05),
    (2.45, 9.99976602647376533e-01, 2.33973526234959069e-05),
    (2.50, 9.99980472035055357e-01, 1.95279649446140345e-05),
    (2.55, 9.99983721798321068e-01, 1.62782016789362151e-05),
    (2.60, 9.99986447550712532e-01, 1.35524492874329988e-05),
    (2.65, 9.99988730781290802e-01, 1.12692187091682974e-05),
    (2.70, 9.99990640833678057e-01, 9.35916632196189423e-06),
    (2.75, 9.99992236625776187e-01, 7.76337422382587264e-06),
    (2.80, 9.99993568141200218e-01, 6.43185879973811249e-06),
    (2.85, 9.99994677720221103e-01, 5.32227977893591886e-06),
    (2.90, 9.99995601175032722e-01, 4.39882496723773395e-06),
    (2.95, 9.99996368751444153e-01, 3.63124855578813548e-06),
    (3.00, 9.99997005956607454e-01, 2.99404339254845670e-06),
    (3.05, 9.99997534270141819e-01, 2.46572985814228338e-06),
    (3.10, 9.99997971753976866e-01, 2.02824602307489263e-06),
    (3.15, 9.99998333574426579e-01, 1.66642557340765680e-06),
    (3.20, 9.99998632448318325e-01, 1.36755168163374581e-06),
    (3.25, 9.99998879023597076e-01, 1.12097640287621185e-06),
    (3.30, 9.99999082203448242e-01, 9.17796551749920099e-07),
    (3.35, 9.99999249421871461e-01, 7.50578128519187813e-07),
    (3.40, 9.99999386877575169e-01, 6.13122424765309017e-07),
    (3.45, 9.99999499732189379e-01, 5.00267810612462646e-07),
    (3.50, 9.99999592277940552e-01, 4.07722059480897085e-07),
    (3.55, 9.99999668079291526e-01, 3.31920708477333398e-07),
    (3.60, 9.99999730092373751e-01, 2.69907626240224450e-07),
    (3.65, 9.99999780765557955e-01, 2.19234442055578680e-07),
    (3.70, 9.99999822124000737e-01, 1.77875999275763084e-07),
    (3.75, 9.99999855840597140e-01, 1.44159402829722363e-07),
    (3.80, 9.99999883295467185e-01, 1.16704532795088594e-07),
    (3.85, 9.99999905625717944e-01, 9.43742820128394569e-08),
    (3.90, 9.99999923767033283e-01, 7.62329666736107607e-08),
    (3.95, 9.99999938488373763e-01, 6.15116262506371501e-08),
    (4.00, 9.99999950420878858e-01, 4.95791211071438435e-08),
    (4.05, 9.99999960081921602e-01, 3.99180784333712310e-08),
    (4.10, 9.99999967895081832e-01, 3.21049181325511559e-08),
    (4.15, 9.99999974206719489e-01, 2.57932805347772966e-08),
    (4.20, 9.99999979299703634e-01, 2.07002963885018903e-08),
    (4.25, 9.99999983404765702e-01, 1.65952342807170113e-08),
    (4.30, 9.99999986709878663e-01, 1.32901213656066516e-08),
    (4.35, 9.99999989367997499e-01, 1.06320024480301625e-08),
    (4.40, 9.99999991503431329e-01, 8.49656863727587162e-09),
    (4.45, 9.99999993217086658e-01, 6.78291332070924989e-09),
    (4.50, 9.99999994590775820e-01, 5.40922416608039291e-09),
    (4.55, 9.99999995690752819e-01, 4.30924717267736091e-09),
    (4.60, 9.99999996570606231e-01, 3.42939376349398494e-09),
    (4.65, 9.99999997273631647e-01, 2.72636834984594904e-09),
    (4.70, 9.99999997834767118e-01, 2.16523287970018010e-09),
    (4.75, 9.99999998282172675e-01, 1.71782732346082660e-09),
    (4.80, 9.99999998638522292e-01, 1.36147770748925049e-09),
    (4.85, 9.99999998922047606e-01, 1.07795239347325103e-09),
    (4.90, 9.99999999147393903e-01, 8.52606096497414966e-10),
    (4.95, 9.99999999326312672e-01, 6.73687327934688078e-10),
    (5.00, 9.99999999468220935e-01, 5.31779065095764426e-10),
];
